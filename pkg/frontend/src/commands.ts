/** Sidebar command templates, grouped into collapsible panels. */

export interface CommandEntry {
  label: string;
  template: string;
}

export interface CommandGroup {
  title: string;
  entries: CommandEntry[];
}

export const COMMAND_GROUPS: CommandGroup[] = [
  {
    title: "Functions",
    entries: [
      { label: "sin", template: "\\sin( )" },
      { label: "cos", template: "\\cos( )" },
      { label: "tg", template: "\\tg( )" },
      { label: "ln", template: "\\ln( )" },
      { label: "exp", template: "\\exp( )" },
      { label: "value", template: "\\value(f, [ ])" },
      { label: "∫", template: "\\int( ) d x" },
      { label: "D", template: "\\D(f, x)" },
      { label: "Factor", template: "\\Factor( )" },
    ],
  },
  {
    title: "Polynomials and solvers",
    entries: [
      { label: "solve =", template: "\\solve(  = 0)" },
      { label: "solve ≥", template: "\\solve(  \\ge 0)" },
      { label: "gbasis", template: "\\gbasis( )" },
      { label: "solveNAE", template: "\\solveNAE( )" },
      { label: "print", template: "\\print( )" },
    ],
  },
  {
    title: "Tropical",
    entries: [
      { label: "A x = b", template: "\\solveLAETropic(A, b)" },
      { label: "A x ≤ b", template: "\\solveLAITropic(A, b)" },
      { label: "Bellman", template: "\\BellmanEquation(A, b)" },
      { label: "distances", template: "\\searchLeastDistances(A)" },
      { label: "path", template: "\\findTheShortestPath(A, 1, 2)" },
      { label: "∞", template: "\\infty" },
    ],
  },
  {
    title: "Space presets",
    entries: [
      { label: "R64[x, y]", template: "SPACE = R64[x, y];" },
      { label: "Q[x]", template: "SPACE = Q[x];" },
      { label: "R[x, y]", template: "SPACE = R[x, y];" },
      { label: "C64[x]", template: "SPACE = C64[x];" },
      { label: "Z[x, y, z]", template: "SPACE = Z[x, y, z];" },
      { label: "ZMaxPlus[x, y]", template: "SPACE = ZMaxPlus[x, y];" },
      { label: "ZMaxMult[x, y]", template: "SPACE = ZMaxMult[x, y];" },
      { label: "ZMinPlus[x, y]", template: "SPACE = ZMinPlus[x, y];" },
      { label: "FLOATPOS", template: "FLOATPOS = 2;" },
    ],
  },
];
