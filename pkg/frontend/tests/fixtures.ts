// Golden documents and their evaluation results, captured from the command
// line client (`mathpar run --format json` and the default latex format).
// `cells`/`joined` mirror what the service's /split and /join endpoints
// return for these documents. Regenerate by re-running the CLI if the
// rendering rules ever change.

import type { CellResult } from "../src/api.js";

export interface GoldenDocument {
  // raw file contents as loaded from disk
  text: string;
  // /split of `text`
  cells: string[];
  // /join of `cells` (the raw text minus the trailing newline)
  joined: string;
  // per-cell evaluation results when run in order in one session
  results: CellResult[];
  // displayed output lines, in document order
  lines: string[];
}

export const integralDocument: GoldenDocument = {
  text: "\"We can first evaluate the indefinite integral,\"\n\na=2; f=a\\cos(2x); g=\\int(f) d x;\n\n\"and then check that we haven't made a mistake \"\n\nh=  \\D_{x}(g); ; \\print(g,h) ;\n",
  cells: [
  "\"We can first evaluate the indefinite integral,\"",
  "a=2; f=a\\cos(2x); g=\\int(f) d x;",
  "\"and then check that we haven't made a mistake \"",
  "h=  \\D_{x}(g); ; \\print(g,h) ;"
],
  joined: "\"We can first evaluate the indefinite integral,\"\n\na=2; f=a\\cos(2x); g=\\int(f) d x;\n\n\"and then check that we haven't made a mistake \"\n\nh=  \\D_{x}(g); ; \\print(g,h) ;",
  results: [
  {
    "ok": true,
    "outputs": [],
    "diagnostics": []
  },
  {
    "ok": true,
    "outputs": [
      {
        "label": null,
        "display": "\\sin(2x)",
        "source": "\\sin(2 * x)"
      }
    ],
    "diagnostics": []
  },
  {
    "ok": true,
    "outputs": [],
    "diagnostics": []
  },
  {
    "ok": true,
    "outputs": [
      {
        "label": "g",
        "display": "\\sin(2x)",
        "source": "\\sin(2 * x)"
      },
      {
        "label": "h",
        "display": "2\\cos(2x)",
        "source": "2 * \\cos(2 * x)"
      }
    ],
    "diagnostics": []
  }
],
  lines: [
  "\\sin(2x)",
  "g = \\sin(2x)",
  "h = 2\\cos(2x)"
],
};

export const heatDocument: GoldenDocument = {
  text: "\"EXERCISE 1\nA piece of ice which has mass\"\nM = 10 kg\n\"was put in a vessel. The ice has temperature \"\nT = -10 \\degreeC ;\n\"Find the mass of water in a vessel after transferring the\"\nq = 20000 kJ\n\"amount of heat. Specific heat of water heating is equal \"\nc_v = 4.2 kJ/(kg \\degreeC) ;\n\"Specific heat of ice heating is equal\"\nc_i = 2.1 kJ/(kg \\degreeC );\n\"The heat of fuson of ice is equal\"\nr = 330 kJ/kg;\n\"Specific heat of vaporization of water is equal\"\n\\lambda = 2300 kJ/kg;\n\n\"SOLUTION OF EX. 1.\"\nq_1 = M c_i (0 - T) \" The heat for heating ice\"\nq_2 = M r \" The heat to melt ice\"\nq_3 = M c_v(100 \\degreeC) \" The  heat for heating water\"\n\"Let x be the unknown mass of the remaining water \"\nq_4 = (M - x) \\lambda \" The  heat to evaporate water\"\n\" We have to solve the equation with  unknown mass x: \"\nmass = \\solve(q = q_1 + q_2 + q_3 + q_4);\n\\print(mass);\n\nmass = \\value(mass);\n",
  cells: [
  "\"EXERCISE 1\nA piece of ice which has mass\"\nM = 10 kg\n\"was put in a vessel. The ice has temperature \"\nT = -10 \\degreeC ;\n\"Find the mass of water in a vessel after transferring the\"\nq = 20000 kJ\n\"amount of heat. Specific heat of water heating is equal \"\nc_v = 4.2 kJ/(kg \\degreeC) ;\n\"Specific heat of ice heating is equal\"\nc_i = 2.1 kJ/(kg \\degreeC );\n\"The heat of fuson of ice is equal\"\nr = 330 kJ/kg;\n\"Specific heat of vaporization of water is equal\"\n\\lambda = 2300 kJ/kg;",
  "\"SOLUTION OF EX. 1.\"\nq_1 = M c_i (0 - T) \" The heat for heating ice\"\nq_2 = M r \" The heat to melt ice\"\nq_3 = M c_v(100 \\degreeC) \" The  heat for heating water\"\n\"Let x be the unknown mass of the remaining water \"\nq_4 = (M - x) \\lambda \" The  heat to evaporate water\"\n\" We have to solve the equation with  unknown mass x: \"\nmass = \\solve(q = q_1 + q_2 + q_3 + q_4);\n\\print(mass);",
  "mass = \\value(mass);"
],
  joined: "\"EXERCISE 1\nA piece of ice which has mass\"\nM = 10 kg\n\"was put in a vessel. The ice has temperature \"\nT = -10 \\degreeC ;\n\"Find the mass of water in a vessel after transferring the\"\nq = 20000 kJ\n\"amount of heat. Specific heat of water heating is equal \"\nc_v = 4.2 kJ/(kg \\degreeC) ;\n\"Specific heat of ice heating is equal\"\nc_i = 2.1 kJ/(kg \\degreeC );\n\"The heat of fuson of ice is equal\"\nr = 330 kJ/kg;\n\"Specific heat of vaporization of water is equal\"\n\\lambda = 2300 kJ/kg;\n\n\"SOLUTION OF EX. 1.\"\nq_1 = M c_i (0 - T) \" The heat for heating ice\"\nq_2 = M r \" The heat to melt ice\"\nq_3 = M c_v(100 \\degreeC) \" The  heat for heating water\"\n\"Let x be the unknown mass of the remaining water \"\nq_4 = (M - x) \\lambda \" The  heat to evaporate water\"\n\" We have to solve the equation with  unknown mass x: \"\nmass = \\solve(q = q_1 + q_2 + q_3 + q_4);\n\\print(mass);\n\nmass = \\value(mass);",
  results: [
  {
    "ok": true,
    "outputs": [
      {
        "label": null,
        "display": "2300 \\cdot kJ/kg",
        "source": "2300 * kJ/kg"
      }
    ],
    "diagnostics": []
  },
  {
    "ok": true,
    "outputs": [
      {
        "label": "mass",
        "display": "\\frac{1071}{230} \\cdot kg",
        "source": "1071/230 * kg"
      }
    ],
    "diagnostics": []
  },
  {
    "ok": true,
    "outputs": [
      {
        "label": null,
        "display": "4.66 \\cdot kg",
        "source": "4.66 * kg"
      }
    ],
    "diagnostics": []
  }
],
  lines: [
  "2300 \\cdot kJ/kg",
  "mass = \\frac{1071}{230} \\cdot kg",
  "4.66 \\cdot kg"
],
};
