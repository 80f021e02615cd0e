/** Application wiring: one client, one state object, one render loop.
 *
 * Drags update the scene optimistically but every number shown comes
 * from a service round trip; requests are rate-capped with latest-wins
 * replacement and a drag-end flush.
 */

import { ApiClient, ApiError } from "./api.js";
import { clampDrag, cwDistance, pointToPosition, positionToPoint } from "./circle.js";
import { EvaluationQueue } from "./debounce.js";
import { PRESETS, equidistant } from "./presets.js";
import { render, SCENE, type Controls } from "./render.js";
import {
  applyDualDrag,
  applyError,
  applyEvaluate,
  initialState,
  setAlpha,
  setDragMode,
  setLambda,
  setMechanism,
  setPartner,
  type UiState,
} from "./state.js";
import type { DragMode, Mechanism } from "./types.js";

interface EvaluateJob {
  kind: "evaluate";
  positions: number[];
}

interface DualDragJob {
  kind: "dual";
  positions: number[];
  agents: [number, number];
  displacement: number;
}

type Job = EvaluateJob | DualDragJob;

/** Signed shortest displacement from a to b, in (-0.5, 0.5]. */
function signedDelta(a: number, b: number): number {
  const d = cwDistance(a, b);
  return d > 0.5 ? d - 1 : d;
}

export class App implements Controls {
  state: UiState = initialState();

  private readonly queue: EvaluationQueue<Job>;
  private drag: {
    index: number;
    start: number[];
    origin: number;
    live: number[];
    moved: boolean;
  } | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.queue = new EvaluationQueue((job) => this.execute(job));
    this.bindPointerEvents();
  }

  async start(): Promise<void> {
    try {
      const constants = await this.api.constants();
      this.update(setAlpha(this.state, constants.alpha));
    } catch {
      this.update(applyError(this.state, "constants unavailable"));
    }
    this.requestEvaluate(equidistant(5));
    this.queue.flush();
  }

  private update(next: UiState): void {
    this.state = next;
    render(this.root, this.state, this);
  }

  private async execute(job: Job): Promise<void> {
    try {
      if (job.kind === "evaluate") {
        const response = await this.api.evaluate(
          job.positions,
          this.state.mechanism,
          this.state.lambda,
        );
        this.update(applyEvaluate(this.state, job.positions, response));
      } else {
        const response = await this.api.dualDrag(
          job.positions,
          job.agents,
          job.displacement,
        );
        this.update(applyDualDrag(this.state, response));
      }
    } catch (err) {
      const message =
        err instanceof ApiError
          ? err.field
            ? `${err.message} (${err.field})`
            : err.message
          : "unexpected failure";
      this.update(applyError(this.state, message));
    }
  }

  requestEvaluate(positions: number[]): void {
    this.queue.push({ kind: "evaluate", positions });
  }

  // drag lifecycle; tests drive these directly, pointer events map to
  // them through bindPointerEvents

  beginDrag(index: number): void {
    if (index < 0 || index >= this.state.positions.length) {
      return;
    }
    this.drag = {
      index,
      start: [...this.state.positions],
      origin: this.state.positions[index]!,
      live: [...this.state.positions],
      moved: false,
    };
  }

  dragTo(position: number): void {
    const drag = this.drag;
    if (!drag) {
      return;
    }
    drag.moved = true;
    if (this.state.dragMode === "single" || this.state.partner === null) {
      const clamped = clampDrag(drag.start, drag.index, position);
      drag.live = [...drag.start];
      drag.live[drag.index] = clamped;
      this.moveNode(drag.index, clamped);
      this.queue.push({ kind: "evaluate", positions: [...drag.live] });
    } else {
      const displacement = signedDelta(drag.origin, position);
      this.moveNode(drag.index, position);
      this.queue.push({
        kind: "dual",
        positions: [...drag.start],
        agents: [drag.index + 1, this.state.partner + 1],
        displacement,
      });
    }
  }

  endDrag(): void {
    if (this.drag) {
      const tapped = !this.drag.moved;
      const index = this.drag.index;
      this.drag = null;
      if (tapped && this.state.dragMode === "dual") {
        this.update(
          setPartner(this.state, this.state.partner === index ? null : index),
        );
        return;
      }
      this.queue.flush();
    }
  }

  /** Optimistic node move during a gesture; the authoritative render
   * happens when the server answers. */
  private moveNode(index: number, position: number): void {
    const node = this.root.querySelector(`circle.agent[data-index="${index}"]`);
    if (node) {
      const p = positionToPoint(position, SCENE.cx, SCENE.cy, SCENE.r);
      node.setAttribute("cx", String(p.x));
      node.setAttribute("cy", String(p.y));
    }
  }

  // Controls implementation

  onSelectN(n: number): void {
    this.requestEvaluate(equidistant(n));
    this.queue.flush();
  }

  onMechanism(mechanism: string): void {
    this.update(setMechanism(this.state, mechanism as Mechanism));
    this.requestEvaluate([...this.state.positions]);
    this.queue.flush();
  }

  onLambda(lambda: number): void {
    this.update(setLambda(this.state, lambda));
    this.requestEvaluate([...this.state.positions]);
    this.queue.flush();
  }

  onDragMode(mode: string): void {
    this.update(setDragMode(this.state, mode as DragMode));
  }

  onPreset(id: string, params: Record<string, number>): void {
    const preset = PRESETS.find((p) => p.id === id);
    if (!preset) {
      return;
    }
    const n = this.state.positions.length || 5;
    this.requestEvaluate(preset.build(preset.size(n), params));
    this.queue.flush();
  }

  onExport(): void {
    const text = this.exportJson();
    try {
      const blob = new Blob([text], { type: "application/json" });
      const anchor = document.createElement("a");
      anchor.href = URL.createObjectURL(blob);
      anchor.download = "circlemech-instance.json";
      anchor.click();
      URL.revokeObjectURL(anchor.href);
    } catch {
      // headless environments have no object URLs; the serialized
      // payload is still returned by exportJson for callers
    }
  }

  exportJson(): string {
    return JSON.stringify(
      {
        positions: this.state.positions,
        mechanism: this.state.mechanism,
        lambda: this.state.lambda,
        response: this.state.last,
      },
      null,
      2,
    );
  }

  private bindPointerEvents(): void {
    this.root.addEventListener("pointerdown", (event) => {
      const target = event.target as Element | null;
      const node = target?.closest?.("circle.agent");
      if (!node) {
        return;
      }
      const index = Number(node.getAttribute("data-index"));
      this.beginDrag(index);
    });
    this.root.addEventListener("pointermove", (event) => {
      if (!this.drag) {
        return;
      }
      const scene = this.root.querySelector("svg.scene");
      if (!scene) {
        return;
      }
      const rect = (scene as SVGSVGElement).getBoundingClientRect();
      const position = pointToPosition(
        (event as PointerEvent).clientX - rect.left,
        (event as PointerEvent).clientY - rect.top,
        SCENE.cx,
        SCENE.cy,
      );
      this.dragTo(position);
    });
    this.root.addEventListener("pointerup", () => this.endDrag());
  }
}

export function boot(root: HTMLElement, baseUrl = ""): App {
  const app = new App(root, new ApiClient(baseUrl));
  void app.start();
  return app;
}
