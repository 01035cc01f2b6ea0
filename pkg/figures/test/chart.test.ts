import { describe, expect, it } from "vitest";
import { renderHeatFigure, renderLineFigure, ROLE_COLORS } from "../src/chart";
import { count } from "./fixtures";

const line = (role: "agent" | "run-mean" | "variance" | "grand-mean", ys: number[]) => ({
  xs: ys.map((_, i) => i),
  ys,
  role,
});

describe("renderLineFigure", () => {
  it("lays out panels and series with role classes and colors", () => {
    const svg = renderLineFigure({
      title: "demo",
      panels: [
        { title: "a", series: [line("agent", [0.1, 0.2]), line("run-mean", [0.2, 0.3])] },
        { title: "b", series: [line("variance", [0.0, 0.1]), line("grand-mean", [0.5, 0.6])] },
      ],
      columns: 2,
      xLabel: "step",
      yLabel: "belief",
    });
    expect(count(svg, '<g class="panel"')).toBe(2);
    expect(count(svg, 'class="series role-agent"')).toBe(1);
    expect(count(svg, 'class="series role-run-mean"')).toBe(1);
    expect(count(svg, 'class="series role-variance"')).toBe(1);
    expect(count(svg, 'class="series role-grand-mean"')).toBe(1);
    for (const color of Object.values(ROLE_COLORS)) {
      expect(svg).toContain(`stroke="${color}"`);
    }
  });

  it("clamps out-of-range values onto the unit axis", () => {
    const clipped = renderLineFigure({
      title: "t",
      panels: [{ title: "p", series: [line("agent", [1.4, -0.2])] }],
      columns: 1,
      xLabel: "x",
      yLabel: "y",
    });
    const exact = renderLineFigure({
      title: "t",
      panels: [{ title: "p", series: [line("agent", [1.0, 0.0])] }],
      columns: 1,
      xLabel: "x",
      yLabel: "y",
    });
    expect(clipped).toBe(exact);
  });

  it("is deterministic", () => {
    const make = () =>
      renderLineFigure({
        title: "same",
        panels: [{ title: "p", series: [line("agent", [0.25, 0.75, 0.5])] }],
        columns: 1,
        xLabel: "x",
        yLabel: "y",
      });
    expect(make()).toBe(make());
  });

  it("refuses figures and panels without content", () => {
    expect(() =>
      renderLineFigure({ title: "t", panels: [], columns: 1, xLabel: "x", yLabel: "y" })
    ).toThrow(/no panels/);
    expect(() =>
      renderLineFigure({
        title: "t",
        panels: [{ title: "p", series: [] }],
        columns: 1,
        xLabel: "x",
        yLabel: "y",
      })
    ).toThrow(/no series/);
  });

  it("escapes markup in labels", () => {
    const svg = renderLineFigure({
      title: "a < b & c",
      panels: [{ title: "p", series: [line("agent", [0.5])] }],
      columns: 1,
      xLabel: "x",
      yLabel: "y",
    });
    expect(svg).toContain("a &lt; b &amp; c");
  });
});

describe("renderHeatFigure", () => {
  it("draws one cell per grid point per panel", () => {
    const svg = renderHeatFigure({
      title: "heat",
      panels: [
        {
          title: "c",
          xs: [0.1, 0.2, 0.3],
          ys: [0.4, 0.5],
          values: [
            [0.0, 0.5, 1.0],
            [0.2, 0.4, 0.6],
          ],
        },
      ],
      columns: 1,
      xLabel: "x",
      yLabel: "y",
    });
    expect(count(svg, '<g class="panel"')).toBe(1);
    expect(count(svg, '<rect class="cell"')).toBe(6);
  });
});
