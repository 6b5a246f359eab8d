import socket
import threading
import time

import httpx
import pytest
import uvicorn

from mathpar.service import create_app


@pytest.fixture(scope="session")
def live_server():
    """A real uvicorn server on a free port, shared across the session."""
    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    sock.close()
    config = uvicorn.Config(create_app(), host="127.0.0.1", port=port,
                            log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{port}"
    for _ in range(100):
        try:
            httpx.get(base + "/api/health", timeout=1)
            break
        except httpx.TransportError:
            time.sleep(0.05)
    else:
        raise RuntimeError("server did not come up")
    yield base
    server.should_exit = True
    thread.join(timeout=5)
