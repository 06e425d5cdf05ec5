export {
  parseMatrixCsv,
  parseCrossectionCsv,
  parseSeriesCsv,
  SchemaMismatch,
} from "./csv.js";
export { divergingColor, symmetricLimit } from "./color.js";
export { heatmapSvg, crossectionSvg, seriesSvg } from "./svg.js";
export { parseArgs, render, main } from "./cli.js";
