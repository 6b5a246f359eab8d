/** Boot the real Python kernel service for integration tests. */

import { ChildProcess, spawn } from "node:child_process";
import net from "node:net";

export interface LiveServer {
  base: string;
  stop: () => void;
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = net.createServer();
    srv.listen(0, "127.0.0.1", () => {
      const address = srv.address();
      if (address && typeof address === "object") {
        const port = address.port;
        srv.close(() => resolve(port));
      } else {
        reject(new Error("no port assigned"));
      }
    });
  });
}

export async function startServer(): Promise<LiveServer> {
  const port = await freePort();
  const proc: ChildProcess = spawn(
    "python3",
    ["-m", "uvicorn", "mathpar.service:app",
     "--host", "127.0.0.1", "--port", String(port), "--log-level", "error"],
    { stdio: ["ignore", "inherit", "inherit"] },
  );
  const base = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 20_000;
  for (;;) {
    try {
      const response = await fetch(`${base}/api/health`);
      if (response.ok) {
        break;
      }
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      proc.kill();
      throw new Error("kernel service did not come up in time");
    }
    await new Promise(resolve => setTimeout(resolve, 100));
  }
  return { base, stop: () => void proc.kill() };
}
