export { parseResults, ResultRow, SchemaError, DataError } from "./csv";
export { aggregate, Curve, CurvePoint } from "./aggregate";
export { buildChart, ChartOptions, MethodStyle } from "./chart";
export { Scene, PALETTE } from "./scene";
export { sceneToSvg } from "./svg";
export { sceneToPng, encodePng, rasterize } from "./png";
export { render, svgSibling, PlotSpec, RenderResult } from "./render";
