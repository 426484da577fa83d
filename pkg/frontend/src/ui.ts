// DOM layer: renders the Notebook state and wires user gestures back into it.
// All math shown here is display text received from the service.

import type { Notebook } from "./state.js";
import { outputLine } from "./state.js";
import { renderMathSafe, escapeHtml } from "./render.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function renderOutputs(notebook: Notebook, index: number): HTMLElement {
  const cell = notebook.cell(index);
  const box = el("div", "outputs");
  if (cell.lastResult === null) return box;
  if (notebook.isStale(index)) {
    box.appendChild(el("div", "stale-note", "output is from an earlier version of this cell"));
  }
  for (const output of cell.lastResult.outputs) {
    const line = el("div", "output-line");
    line.innerHTML = renderMathSafe(outputLine(output));
    box.appendChild(line);
  }
  for (const diag of cell.lastResult.diagnostics) {
    box.appendChild(el("div", `diagnostic ${diag.severity}`, `${diag.severity}: ${diag.message}`));
  }
  return box;
}

function renderCell(notebook: Notebook, index: number): HTMLElement {
  const cell = notebook.cell(index);
  const wrap = el("div", cell.mode === "image" ? "cell image-mode" : "cell text-mode");

  const bar = el("div", "cell-bar");
  const run = el("button", "run", "▶");
  run.title = "Run (Ctrl-Enter)";
  run.disabled = cell.running;
  run.addEventListener("click", () => void notebook.runCellButton(index));
  bar.appendChild(run);

  const toggle = el("button", "toggle", cell.mode === "image" ? "source" : "rendered");
  toggle.addEventListener("click", () => notebook.toggleMode(index));
  bar.appendChild(toggle);

  const add = el("button", "add", "+ below");
  add.addEventListener("click", () => notebook.addCellBelow(index));
  bar.appendChild(add);

  const remove = el("button", "remove", "remove");
  remove.addEventListener("click", () => notebook.removeCell(index));
  bar.appendChild(remove);

  if (cell.running) bar.appendChild(el("span", "busy", "running…"));
  wrap.appendChild(bar);

  if (cell.mode === "text") {
    const editor = el("textarea", "editor");
    editor.value = cell.source;
    editor.rows = Math.max(2, cell.source.split("\n").length);
    editor.addEventListener("input", () => notebook.setSource(index, editor.value));
    editor.addEventListener("keydown", (event) => {
      if (event.key === "Enter" && (event.ctrlKey || event.metaKey)) {
        event.preventDefault();
        void notebook.runCellKeyboard(index);
      }
    });
    wrap.appendChild(editor);
  } else {
    const view = el("div", "rendered");
    view.innerHTML = renderMathSafe(cell.source);
    view.title = "Click to edit";
    view.addEventListener("click", () => notebook.clickIntoCell(index));
    wrap.appendChild(view);
  }

  wrap.appendChild(renderOutputs(notebook, index));
  return wrap;
}

function download(name: string, text: string): void {
  const blob = new Blob([text], { type: "text/plain" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = name;
  anchor.click();
  URL.revokeObjectURL(url);
}

function renderToolbar(notebook: Notebook): HTMLElement {
  const bar = el("div", "toolbar");

  const open = el("input") as HTMLInputElement;
  open.type = "file";
  open.accept = ".txt,text/plain";
  open.addEventListener("change", () => {
    const file = open.files?.[0];
    if (!file) return;
    void file.text().then((text) => notebook.loadDocument(text));
    open.value = "";
  });
  bar.appendChild(open);

  const save = el("button", "", "Save");
  save.addEventListener("click", () => {
    void notebook
      .saveDocument()
      .then((text) => download("notebook.txt", text))
      .catch((err: unknown) => {
        notebook.banner = `Save failed: ${err instanceof Error ? err.message : String(err)}`;
      });
  });
  bar.appendChild(save);

  const reset = el("button", "", "Reset session");
  reset.addEventListener("click", () => void notebook.resetSession());
  bar.appendChild(reset);

  const session = el("span", "session", notebook.sessionId ?? "no session yet");
  bar.appendChild(session);

  return bar;
}

export function renderNotebook(root: HTMLElement, notebook: Notebook): void {
  root.textContent = "";
  root.appendChild(renderToolbar(notebook));
  if (notebook.banner !== null) {
    const banner = el("div", "banner");
    banner.innerHTML = escapeHtml(notebook.banner);
    root.appendChild(banner);
  }
  const list = el("div", "cells");
  notebook.cells.forEach((_, index) => list.appendChild(renderCell(notebook, index)));
  root.appendChild(list);
}
