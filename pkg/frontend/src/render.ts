/** DOM construction. Pure function of the state: build the SVG scene,
 * the readout panel, and the controls into a root element. Numbers on
 * screen are formatted views of the parsed server values; full
 * precision rides along in title attributes. */

import { positionToPoint } from "./circle.js";
import { formatGamma, formatShort } from "./format.js";
import { PRESETS } from "./presets.js";
import type { UiState } from "./state.js";

export const SVG_NS = "http://www.w3.org/2000/svg";

export const SCENE = { cx: 190, cy: 190, r: 150, size: 380 };

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    el.setAttribute(k, v);
  }
  return el;
}

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function midpointOfArc(from: number, to: number): number {
  const gap = (to - from + 1) % 1;
  return (from + gap / 2) % 1;
}

/** The arc facing agent i runs between agents i+(n-1)/2 and i+(n+1)/2
 * clockwise; label it with the served probability. */
function facingLabels(state: UiState, scene: SVGSVGElement): void {
  const { positions, last } = state;
  if (!last) return;
  const n = positions.length;
  const half = (n - 1) / 2;
  for (let i = 0; i < n; i++) {
    const from = positions[(i + half) % n]!;
    const to = positions[(i + half + 1) % n]!;
    const mid = midpointOfArc(from, to);
    const p = positionToPoint(mid, SCENE.cx, SCENE.cy, SCENE.r + 26);
    const text = svgEl("text", {
      x: String(p.x),
      y: String(p.y),
      "text-anchor": "middle",
      class: "arc-label",
      "data-agent": String(i + 1),
    });
    text.textContent = `P${i + 1}=${formatShort(last.facing[i]!)}`;
    text.setAttribute("title", String(last.facing[i]!));
    scene.appendChild(text);
  }
}

function renderScene(state: UiState): SVGSVGElement {
  const scene = svgEl("svg", {
    width: String(SCENE.size),
    height: String(SCENE.size),
    viewBox: `0 0 ${SCENE.size} ${SCENE.size}`,
    class: "scene",
  });
  scene.appendChild(
    svgEl("circle", {
      cx: String(SCENE.cx),
      cy: String(SCENE.cy),
      r: String(SCENE.r),
      class: "rim",
      fill: "none",
    }),
  );
  facingLabels(state, scene);

  const optIdx = state.last ? state.last.opt_index - 1 : -1;
  state.positions.forEach((pos, i) => {
    const p = positionToPoint(pos, SCENE.cx, SCENE.cy, SCENE.r);
    const classes = ["agent"];
    if (i === optIdx) classes.push("optimal");
    if (state.partner === i) classes.push("partner");
    const node = svgEl("circle", {
      cx: String(p.x),
      cy: String(p.y),
      r: "9",
      class: classes.join(" "),
      "data-index": String(i),
    });
    scene.appendChild(node);
    const tag = svgEl("text", {
      x: String(p.x),
      y: String(p.y - 14),
      "text-anchor": "middle",
      class: "agent-tag",
    });
    tag.textContent = String(i + 1);
    scene.appendChild(tag);
  });
  return scene;
}

function sparkline(state: UiState): SVGSVGElement {
  const width = 220;
  const height = 56;
  const spark = svgEl("svg", {
    width: String(width),
    height: String(height),
    viewBox: `0 0 ${width} ${height}`,
    class: "sparkline",
  });
  const history = state.gammaHistory;
  const lo = 1;
  const alpha = state.alpha;
  const hi = Math.max(alpha ?? 1.35, ...history, 1.05) * 1.02;
  const y = (g: number) => height - 6 - ((g - lo) / (hi - lo)) * (height - 12);

  if (alpha !== null) {
    const ay = y(alpha);
    spark.appendChild(
      svgEl("line", {
        x1: "0",
        y1: String(ay),
        x2: String(width),
        y2: String(ay),
        class: "alpha-line",
        "stroke-dasharray": "4 3",
      }),
    );
    const label = svgEl("text", {
      x: String(width - 4),
      y: String(ay - 3),
      "text-anchor": "end",
      class: "alpha-label",
    });
    label.textContent = `α=${formatGamma(alpha)}`;
    spark.appendChild(label);
  }
  if (history.length > 0) {
    const step = history.length > 1 ? width / (history.length - 1) : 0;
    const pts = history.map((g, i) => `${i * step},${y(g)}`).join(" ");
    spark.appendChild(
      svgEl("polyline", { points: pts, class: "gamma-history", fill: "none" }),
    );
  }
  return spark;
}

function readoutRow(label: string, value: string, full: string, cls: string): HTMLElement {
  const row = el("div", `readout ${cls}`);
  row.appendChild(el("span", "label", label));
  const v = el("span", "value", value);
  v.title = full;
  row.appendChild(v);
  return row;
}

function renderPanel(state: UiState): HTMLElement {
  const panel = el("div", "panel");
  const last = state.last;
  if (!last) {
    panel.appendChild(el("p", "placeholder", "no evaluation yet"));
    return panel;
  }
  panel.appendChild(
    readoutRow("γ", formatGamma(last.gamma), String(last.gamma), "gamma"),
  );
  panel.appendChild(readoutRow("SC", formatShort(last.sc), String(last.sc), "sc"));
  panel.appendChild(
    readoutRow(
      "OPT",
      `agent ${last.opt_index} @ ${formatShort(last.opt_cost)}`,
      String(last.opt_cost),
      "opt",
    ),
  );
  if (state.worstGamma !== null) {
    panel.appendChild(
      readoutRow(
        "worst seen",
        formatGamma(state.worstGamma),
        String(state.worstGamma),
        "worst-gamma",
      ),
    );
  }
  if (state.preservedOpt !== null) {
    const badge = el(
      "div",
      `badge ${state.preservedOpt ? "preserved" : "broken"}`,
      state.preservedOpt ? "optimum preserved" : "optimum moved",
    );
    panel.appendChild(badge);
  }

  const table = el("table", "costs");
  const head = el("tr");
  for (const h of ["agent", "position", "P", "C"]) {
    head.appendChild(el("th", undefined, h));
  }
  table.appendChild(head);
  state.positions.forEach((pos, i) => {
    const row = el("tr", i === last.opt_index - 1 ? "optimal-row" : undefined);
    row.appendChild(el("td", undefined, String(i + 1)));
    const posCell = el("td", undefined, formatShort(pos));
    posCell.title = String(pos);
    row.appendChild(posCell);
    const pCell = el("td", undefined, formatShort(last.facing[i]!));
    pCell.title = String(last.facing[i]!);
    row.appendChild(pCell);
    const cCell = el("td", undefined, formatShort(last.costs[i]!));
    cCell.title = String(last.costs[i]!);
    row.appendChild(cCell);
    table.appendChild(row);
  });
  panel.appendChild(table);
  panel.appendChild(sparkline(state));
  return panel;
}

export interface Controls {
  onSelectN(n: number): void;
  onMechanism(mechanism: string): void;
  onLambda(lambda: number): void;
  onDragMode(mode: string): void;
  onPreset(id: string, params: Record<string, number>): void;
  onExport(): void;
}

function renderControls(state: UiState, actions: Controls): HTMLElement {
  const bar = el("div", "controls");

  const nWrap = el("label", "control", "agents ");
  const nSelect = el("select") as HTMLSelectElement;
  nSelect.className = "n-select";
  for (const n of [3, 5, 7]) {
    const opt = el("option", undefined, String(n)) as HTMLOptionElement;
    opt.value = String(n);
    if (state.positions.length === n) opt.selected = true;
    nSelect.appendChild(opt);
  }
  nSelect.addEventListener("change", () => actions.onSelectN(Number(nSelect.value)));
  nWrap.appendChild(nSelect);
  bar.appendChild(nWrap);

  const mechWrap = el("label", "control", "mechanism ");
  const mech = el("select") as HTMLSelectElement;
  mech.className = "mechanism-select";
  for (const m of ["pcd", "rd", "mix"]) {
    const opt = el("option", undefined, m) as HTMLOptionElement;
    opt.value = m;
    if (state.mechanism === m) opt.selected = true;
    mech.appendChild(opt);
  }
  mech.addEventListener("change", () => actions.onMechanism(mech.value));
  mechWrap.appendChild(mech);
  bar.appendChild(mechWrap);

  const lamWrap = el("label", "control", `λ=${state.lambda.toFixed(2)} `);
  const lam = el("input") as HTMLInputElement;
  lam.type = "range";
  lam.min = "0";
  lam.max = "1";
  lam.step = "0.01";
  lam.value = String(state.lambda);
  lam.className = "lambda-slider";
  lam.disabled = state.mechanism !== "mix";
  lam.addEventListener("change", () => actions.onLambda(Number(lam.value)));
  lamWrap.appendChild(lam);
  bar.appendChild(lamWrap);

  const modeWrap = el("label", "control", "drag ");
  const mode = el("select") as HTMLSelectElement;
  mode.className = "drag-mode";
  for (const m of ["single", "dual"]) {
    const opt = el("option", undefined, m) as HTMLOptionElement;
    opt.value = m;
    if (state.dragMode === m) opt.selected = true;
    mode.appendChild(opt);
  }
  mode.addEventListener("change", () => actions.onDragMode(mode.value));
  modeWrap.appendChild(mode);
  bar.appendChild(modeWrap);

  const presets = el("div", "presets");
  for (const preset of PRESETS) {
    const group = el("span", "preset-group");
    const button = el("button", "preset", preset.label) as HTMLButtonElement;
    button.dataset["preset"] = preset.id;
    const params: Record<string, number> = {};
    const sliders: HTMLInputElement[] = [];
    for (const control of preset.controls) {
      params[control.id] = control.value;
      const slider = el("input") as HTMLInputElement;
      slider.type = "range";
      slider.min = String(control.min);
      slider.max = String(control.max);
      slider.step = String(control.step);
      slider.value = String(control.value);
      slider.className = `preset-param ${control.id}`;
      slider.title = `${preset.label} ${control.label}`;
      slider.addEventListener("input", () => {
        params[control.id] = Number(slider.value);
        actions.onPreset(preset.id, { ...params });
      });
      sliders.push(slider);
    }
    button.addEventListener("click", () => actions.onPreset(preset.id, { ...params }));
    group.appendChild(button);
    sliders.forEach((s) => group.appendChild(s));
    presets.appendChild(group);
  }
  bar.appendChild(presets);

  const exportBtn = el("button", "export", "export JSON") as HTMLButtonElement;
  exportBtn.addEventListener("click", () => actions.onExport());
  bar.appendChild(exportBtn);

  return bar;
}

export function render(root: HTMLElement, state: UiState, actions: Controls): void {
  root.textContent = "";
  if (state.error !== null) {
    const banner = el("div", "banner error");
    banner.appendChild(el("span", undefined, state.error));
    banner.appendChild(el("span", "stale-note", " (showing last confirmed state)"));
    root.appendChild(banner);
  }
  const layout = el("div", "layout");
  layout.appendChild(renderScene(state));
  layout.appendChild(renderPanel(state));
  root.appendChild(layout);
  root.appendChild(renderControls(state, actions));
}
