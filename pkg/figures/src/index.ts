export { renderFigure, renderableFigures, FIGURE_IDS, FigureId } from "./figures";
export { renderLineFigure, renderHeatFigure, ROLE_COLORS } from "./chart";
export type { LineFigure, HeatFigure, Panel, Series, Role } from "./chart";
export { readCsvRows, readMetadata, InputError } from "./csv";
export * from "./schema";
export { run as renderCli, main as cliMain } from "./cli";
