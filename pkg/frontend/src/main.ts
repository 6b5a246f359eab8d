import { MathparClient } from "./api";
import { WorkbookApp } from "./app";

declare global {
  interface Window {
    MATHPAR_API_BASE?: string;
  }
}

const root = document.getElementById("app");
if (root) {
  const base = window.MATHPAR_API_BASE ?? "";
  new WorkbookApp(root, new MathparClient(base)).mount();
}
