// Small typesetter: turns the display text returned by the service into HTML.
// It only lays out what it is given; it never evaluates anything.

const GREEK: Record<string, string> = {
  alpha: "α", beta: "β", gamma: "γ", delta: "δ",
  epsilon: "ε", zeta: "ζ", eta: "η", theta: "θ",
  iota: "ι", kappa: "κ", lambda: "λ", mu: "μ",
  nu: "ν", xi: "ξ", pi: "π", rho: "ρ",
  sigma: "σ", tau: "τ", upsilon: "υ", phi: "φ",
  chi: "χ", psi: "ψ", omega: "ω",
  Gamma: "Γ", Delta: "Δ", Theta: "Θ", Lambda: "Λ",
  Xi: "Ξ", Pi: "Π", Sigma: "Σ", Upsilon: "Υ",
  Phi: "Φ", Psi: "Ψ", Omega: "Ω",
};

const SYMBOLS: Record<string, string> = {
  cdot: " · ",
  int: "∫",
  degreeC: "°C",
  pm: " ± ",
  infty: "∞",
};

const FUNCTIONS = new Set([
  "sin", "cos", "tan", "cot", "arcsin", "arccos", "arctan",
  "ln", "lg", "log", "exp", "solve", "print", "value", "D",
]);

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

class Reader {
  pos = 0;

  constructor(public text: string) {}

  peek(): string {
    return this.text[this.pos] ?? "";
  }

  next(): string {
    const ch = this.text[this.pos] ?? "";
    this.pos += 1;
    return ch;
  }

  done(): boolean {
    return this.pos >= this.text.length;
  }

  // Reads either one `{...}` group (returning its inside) or a single char.
  readGroup(): string {
    if (this.peek() !== "{") return this.next();
    this.next();
    let depth = 1;
    let out = "";
    while (!this.done()) {
      const ch = this.next();
      if (ch === "{") depth += 1;
      if (ch === "}") {
        depth -= 1;
        if (depth === 0) return out;
      }
      out += ch;
    }
    return out;
  }

  readCommandName(): string {
    let name = "";
    while (/[a-zA-Z]/.test(this.peek())) name += this.next();
    return name;
  }
}

function renderCommand(reader: Reader): string {
  const name = reader.readCommandName();
  if (name === "") return escapeHtml("\\" + reader.next());
  if (name === "frac") {
    const num = renderMath(reader.readGroup());
    const den = renderMath(reader.readGroup());
    return (
      `<span class="frac"><span class="num">${num}</span>` +
      `<span class="den">${den}</span></span>`
    );
  }
  const greek = GREEK[name];
  if (greek !== undefined) return `<i>${greek}</i>`;
  const symbol = SYMBOLS[name];
  if (symbol !== undefined) return escapeHtml(symbol);
  if (FUNCTIONS.has(name)) return `<span class="fn">${name}</span>`;
  // unknown command: show it literally rather than dropping text
  return escapeHtml("\\" + name);
}

// Renders one display-format math string to an HTML fragment.
export function renderMath(text: string): string {
  const reader = new Reader(text);
  let out = "";
  while (!reader.done()) {
    const ch = reader.next();
    if (ch === "\\") {
      out += renderCommand(reader);
    } else if (ch === "^") {
      out += `<sup>${renderMath(reader.readGroup())}</sup>`;
    } else if (ch === "_") {
      out += `<sub>${renderMath(reader.readGroup())}</sub>`;
    } else if (ch === "{") {
      reader.pos -= 1;
      out += renderMath(reader.readGroup());
    } else if (/[a-zA-Z]/.test(ch)) {
      let word = ch;
      while (/[a-zA-Z]/.test(reader.peek())) word += reader.next();
      out += `<i>${word}</i>`;
    } else {
      out += escapeHtml(ch);
    }
  }
  return out;
}

// Wraps renderMath with a plain-text fallback so a surprising string can
// never take the page down.
export function renderMathSafe(text: string): string {
  try {
    return renderMath(text);
  } catch {
    return escapeHtml(text);
  }
}
