/**
 * LaTeX typesetting via KaTeX, consuming the kernel's latex strings
 * verbatim.  Falls back to showing the raw string when typesetting fails.
 */

import katex from "katex";
import "katex/dist/katex.min.css";

export function renderLatexHtml(latexText: string): string {
  try {
    return katex.renderToString(latexText, {
      displayMode: false,
      throwOnError: false,
      output: "html",
    });
  } catch {
    const span = document.createElement("span");
    span.className = "latex-error";
    span.textContent = latexText;
    return span.outerHTML;
  }
}
