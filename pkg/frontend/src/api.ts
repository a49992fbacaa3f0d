// REST client for the noise-analysis service; the UI talks to the backend
// exclusively through this module.

import { ComparisonPayload, NoiseSpec, Session, StatusResponse, Transcript } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public kind: string, detail: string) {
    super(detail);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(private base = "", private fetchFn: FetchLike = (...args) => globalThis.fetch(...args)) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let kind = "Error";
      let detail = `${response.status}`;
      try {
        const body = await response.json();
        kind = body.error ?? kind;
        detail = body.detail ?? detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, kind, detail);
    }
    return response.json() as Promise<T>;
  }

  async createSession(media: Blob, filename: string, alignment?: Blob): Promise<Session> {
    const form = new FormData();
    form.append("file", media, filename);
    if (alignment) {
      form.append("alignment", alignment, "alignment.json");
    }
    return this.request<Session>("/sessions", { method: "POST", body: form });
  }

  getSession(sid: string): Promise<Session> {
    return this.request<Session>(`/sessions/${sid}`);
  }

  putTranscript(sid: string, transcript: Transcript): Promise<Transcript> {
    return this.request<Transcript>(`/sessions/${sid}/transcript`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(transcript),
    });
  }

  /** Submit canonical spec JSON exactly as serialized (the bytes matter). */
  putNoise(sid: string, specJson: string): Promise<NoiseSpec> {
    return this.request<NoiseSpec>(`/sessions/${sid}/noise`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: specJson,
    });
  }

  generate(sid: string): Promise<{ status: string; generation: number }> {
    return this.request(`/sessions/${sid}/generate`, { method: "POST" });
  }

  status(sid: string): Promise<StatusResponse> {
    return this.request<StatusResponse>(`/sessions/${sid}/status`);
  }

  compare(sid: string, predictor?: string, denoiser?: string): Promise<ComparisonPayload> {
    const params = new URLSearchParams();
    if (predictor) params.set("predictor", predictor);
    if (denoiser) params.set("denoiser", denoiser);
    const query = params.toString();
    return this.request<ComparisonPayload>(`/sessions/${sid}/compare${query ? "?" + query : ""}`);
  }

  mediaUrl(sid: string, which: "original" | "noisy"): string {
    return `${this.base}/sessions/${sid}/media/${which}`;
  }

  /** Poll until generation finishes; one in-flight generation per session. */
  async waitForGeneration(sid: string, pollMs = 500, timeoutMs = 120000): Promise<StatusResponse> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const status = await this.status(sid);
      if (status.status === "done" || status.status === "failed") return status;
      if (Date.now() > deadline) throw new ApiError(408, "Timeout", "generation did not finish in time");
      await new Promise((resolve) => setTimeout(resolve, pollMs));
    }
  }
}
