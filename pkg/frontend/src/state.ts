// Notebook state machine. Holds the cell list and session handle, and turns
// user gestures (run, click, toggle, add, load, save) into transport calls
// and state updates. Deliberately DOM-free so tests can drive it directly.

import type { CellResult, Transport } from "./api.js";

export type CellMode = "text" | "image";

export interface CellView {
  source: string;
  mode: CellMode;
  lastResult: CellResult | null;
  // edited (or clicked back into) since lastResult was produced
  dirty: boolean;
  running: boolean;
}

export function freshCell(source = ""): CellView {
  return { source, mode: "text", lastResult: null, dirty: false, running: false };
}

// One displayed output line; the display text comes verbatim from the service.
export function outputLine(output: { label: string | null; display: string }): string {
  return output.label === null ? output.display : `${output.label} = ${output.display}`;
}

function mergeResults(results: CellResult[]): CellResult {
  return {
    ok: results.every((r) => r.ok),
    outputs: results.flatMap((r) => r.outputs),
    diagnostics: results.flatMap((r) => r.diagnostics),
  };
}

function errorMessage(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}

export class Notebook {
  cells: CellView[] = [freshCell()];
  sessionId: string | null = null;
  banner: string | null = null;
  private sessionPromise: Promise<string> | null = null;

  constructor(
    private transport: Transport,
    private onChange: () => void = () => {},
  ) {}

  private emit(): void {
    this.onChange();
  }

  cell(index: number): CellView {
    const cell = this.cells[index];
    if (cell === undefined) throw new RangeError(`no cell at index ${index}`);
    return cell;
  }

  // The session is created lazily on the first run. The in-flight promise is
  // shared so concurrent first runs create exactly one session.
  private ensureSession(): Promise<string> {
    if (this.sessionPromise === null) {
      this.sessionPromise = this.transport
        .createSession()
        .then((info) => {
          this.sessionId = info.session_id;
          this.emit();
          return info.session_id;
        })
        .catch((err: unknown) => {
          this.sessionPromise = null;
          throw err;
        });
    }
    return this.sessionPromise;
  }

  // "Reset session" control: drop the server-side bindings, keep the cells.
  async resetSession(): Promise<void> {
    const old = this.sessionId;
    this.sessionId = null;
    this.sessionPromise = null;
    try {
      if (old !== null) await this.transport.deleteSession(old);
      await this.ensureSession();
      this.banner = null;
    } catch (err) {
      this.banner = `Session reset failed: ${errorMessage(err)}`;
    }
    this.emit();
  }

  private async evalCell(index: number): Promise<void> {
    const cell = this.cell(index);
    if (cell.running) return; // at most one in-flight evaluation per cell
    if (cell.source.trim() === "") return; // nothing to run, no output area
    cell.running = true;
    this.emit();
    try {
      const sessionId = await this.ensureSession();
      const results = await this.transport.evalSource(sessionId, cell.source);
      cell.lastResult = mergeResults(results);
      cell.dirty = false;
      if (cell.lastResult.ok) cell.mode = "image";
      this.banner = null;
    } catch (err) {
      // network or service failure: keep the editable source front and center
      this.banner = `Evaluation failed: ${errorMessage(err)}`;
    } finally {
      cell.running = false;
      this.emit();
    }
  }

  // Triangle button and Ctrl-Enter are two gestures for the same request.
  runCellButton(index: number): Promise<void> {
    return this.evalCell(index);
  }

  runCellKeyboard(index: number): Promise<void> {
    return this.evalCell(index);
  }

  setSource(index: number, source: string): void {
    const cell = this.cell(index);
    if (cell.source === source) return;
    cell.source = source;
    cell.dirty = true;
    cell.mode = "text";
    this.emit();
  }

  // Clicking into a rendered cell reopens it for editing.
  clickIntoCell(index: number): void {
    const cell = this.cell(index);
    if (cell.mode !== "image") return;
    cell.mode = "text";
    cell.dirty = true;
    this.emit();
  }

  // Flip between rendered view and editable source; a cell that has never
  // been evaluated successfully has no rendered view to show.
  toggleMode(index: number): void {
    const cell = this.cell(index);
    if (cell.mode === "image") {
      cell.mode = "text";
    } else {
      if (cell.lastResult === null || !cell.lastResult.ok) return;
      cell.mode = "image";
    }
    this.emit();
  }

  // A dirty cell that still shows an old result gets a stale marker.
  isStale(index: number): boolean {
    const cell = this.cell(index);
    return cell.dirty && cell.lastResult !== null;
  }

  addCellBelow(index: number): void {
    this.cells.splice(index + 1, 0, freshCell());
    this.emit();
  }

  removeCell(index: number): void {
    this.cell(index);
    this.cells.splice(index, 1);
    if (this.cells.length === 0) this.cells.push(freshCell());
    this.emit();
  }

  // Replace the cell list with the server-side split of a document.
  async loadDocument(text: string): Promise<void> {
    try {
      const pieces = await this.transport.split(text);
      this.cells = pieces.length > 0 ? pieces.map((piece) => freshCell(piece)) : [freshCell()];
      this.banner = null;
    } catch (err) {
      this.banner = `Load failed: ${errorMessage(err)}`;
    }
    this.emit();
  }

  // Serialize the cell list back into one document via the service.
  async saveDocument(): Promise<string> {
    return this.transport.join(this.cells.map((cell) => cell.source));
  }
}
