/**
 * Staged workflow: one card per pipeline stage plus a full-run button.
 * Run state is polled from the run-token endpoint; dependency errors from
 * the API are rendered inline on the stage card.
 */

import { ApiClient, ApiError } from "../api";
import { STAGES, type RunState, type Stage } from "../types";

const sleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

export interface WorkflowCallbacks {
  onPipelineComplete?: () => void;
}

export class WorkflowView {
  private cards = new Map<string, HTMLElement>();
  private running = false;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly profile: string,
    private readonly callbacks: WorkflowCallbacks = {},
    private readonly pollMs = 1000,
  ) {}

  mount(): void {
    this.root.textContent = "";
    this.root.classList.add("workflow");

    const header = document.createElement("div");
    header.className = "workflow-header";
    const runAll = document.createElement("button");
    runAll.className = "run-all";
    runAll.textContent = "Run all stages";
    runAll.addEventListener("click", () => void this.run("run"));
    header.appendChild(runAll);
    this.root.appendChild(header);

    const lane = document.createElement("div");
    lane.className = "stage-lane";
    for (const stage of STAGES) {
      const card = document.createElement("section");
      card.className = "stage-card";
      card.dataset.stage = stage;

      const title = document.createElement("h3");
      title.textContent = stage;
      card.appendChild(title);

      const button = document.createElement("button");
      button.className = "stage-run";
      button.textContent = `Run ${stage}`;
      button.addEventListener("click", () => void this.run(stage));
      card.appendChild(button);

      const status = document.createElement("div");
      status.className = "stage-status";
      status.textContent = "idle";
      card.appendChild(status);

      const summary = document.createElement("dl");
      summary.className = "stage-summary";
      card.appendChild(summary);

      lane.appendChild(card);
      this.cards.set(stage, card);
    }
    this.root.appendChild(lane);
  }

  private setStatus(stage: string, text: string, kind: "idle" | "running" | "done" | "error"): void {
    const card = this.cards.get(stage);
    if (!card) return;
    const status = card.querySelector<HTMLElement>(".stage-status")!;
    status.textContent = text;
    status.dataset.state = kind;
  }

  private setSummary(stage: string, summary: Record<string, unknown>): void {
    const card = this.cards.get(stage);
    if (!card) return;
    const list = card.querySelector<HTMLElement>(".stage-summary")!;
    list.textContent = "";
    for (const [key, value] of Object.entries(summary)) {
      if (key === "stage" || typeof value === "object") continue;
      const dt = document.createElement("dt");
      dt.textContent = key;
      const dd = document.createElement("dd");
      dd.textContent = String(value);
      list.appendChild(dt);
      list.appendChild(dd);
    }
  }

  async run(stage: Stage): Promise<RunState | null> {
    if (this.running) return null;
    this.running = true;
    const affected = stage === "run" ? [...STAGES] : [stage];
    try {
      for (const s of affected) this.setStatus(s, "queued", "running");
      const { token } = await this.api.startRun(stage, this.profile);
      let state = await this.api.runState(token);
      while (state.state === "queued" || state.state === "running") {
        await sleep(this.pollMs);
        state = await this.api.runState(token);
      }
      if (state.state === "error") {
        for (const s of affected) this.setStatus(s, state.error ?? "failed", "error");
        return state;
      }
      const summaries = (stage === "run" ? state.summary : [state.summary]) as Record<string, unknown>[];
      for (const summary of summaries) {
        const s = String(summary.stage ?? stage);
        this.setStatus(s, "done", "done");
        this.setSummary(s, summary);
      }
      if (stage === "run" || stage === "report") {
        this.callbacks.onPipelineComplete?.();
      }
      return state;
    } catch (error) {
      const message = error instanceof ApiError ? error.message : String(error);
      for (const s of affected) this.setStatus(s, message, "error");
      return null;
    } finally {
      this.running = false;
    }
  }
}
