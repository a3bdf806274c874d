import type { IrInfoPayload, MeasuresPayload, PerModelPayload, ReportPayload, RunState, Stage } from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function errorText(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (typeof body.error === "string") return body.error;
    if (body.error && typeof body.error.message === "string") return body.error.message;
    return JSON.stringify(body);
  } catch {
    return response.statusText;
  }
}

/** Thin typed client over the benchmark service; no caching, no recomputation. */
export class ApiClient {
  constructor(readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    if (!response.ok) {
      throw new ApiError(response.status, await errorText(response));
    }
    return (await response.json()) as T;
  }

  async listProfiles(): Promise<string[]> {
    const body = await this.request<{ profiles: string[] }>("/api/profiles");
    return body.profiles;
  }

  getProfile(name: string): Promise<Record<string, unknown>> {
    return this.request(`/api/profiles/${encodeURIComponent(name)}`);
  }

  async putProfile(name: string, profile: unknown): Promise<{ ok: true } | { ok: false; path: string; message: string }> {
    const response = await fetch(`${this.base}/api/profiles/${encodeURIComponent(name)}`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(profile),
    });
    if (response.ok) return { ok: true };
    const body = await response.json();
    return { ok: false, path: body.error?.path ?? "", message: body.error?.message ?? "invalid profile" };
  }

  async startRun(stage: Stage, profile: string): Promise<{ token: string }> {
    return this.request(`/api/runs/${stage}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ profile }),
    });
  }

  runState(token: string): Promise<RunState> {
    return this.request(`/api/runs/${token}`);
  }

  artifact<T>(name: string, profile: string): Promise<T> {
    return this.request(`/api/artifacts/${name}?profile=${encodeURIComponent(profile)}`);
  }

  report(profile: string): Promise<ReportPayload> {
    return this.artifact("report.json", profile);
  }

  measures(profile: string): Promise<MeasuresPayload> {
    return this.artifact("measures.json", profile);
  }

  measuresPerModel(profile: string): Promise<PerModelPayload> {
    return this.artifact("measures_per_model.json", profile);
  }

  irInfo(profile: string): Promise<IrInfoPayload> {
    return this.artifact("ir_info.json", profile);
  }

  modelIr(modelId: string, profile: string): Promise<Record<string, unknown>> {
    return this.request(`/api/models/${modelId}/ir?profile=${encodeURIComponent(profile)}`);
  }
}
