// REST client for the noise-analysis service; the UI talks to the backend
// exclusively through this module.
export class ApiError extends Error {
    constructor(status, kind, detail) {
        super(detail);
        this.status = status;
        this.kind = kind;
    }
}
export class ApiClient {
    constructor(base = "", fetchFn = (...args) => globalThis.fetch(...args)) {
        this.base = base;
        this.fetchFn = fetchFn;
    }
    async request(path, init) {
        const response = await this.fetchFn(this.base + path, init);
        if (!response.ok) {
            let kind = "Error";
            let detail = `${response.status}`;
            try {
                const body = await response.json();
                kind = body.error ?? kind;
                detail = body.detail ?? detail;
            }
            catch {
                // non-JSON error body; keep the status text
            }
            throw new ApiError(response.status, kind, detail);
        }
        return response.json();
    }
    async createSession(media, filename, alignment) {
        const form = new FormData();
        form.append("file", media, filename);
        if (alignment) {
            form.append("alignment", alignment, "alignment.json");
        }
        return this.request("/sessions", { method: "POST", body: form });
    }
    getSession(sid) {
        return this.request(`/sessions/${sid}`);
    }
    putTranscript(sid, transcript) {
        return this.request(`/sessions/${sid}/transcript`, {
            method: "PUT",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(transcript),
        });
    }
    /** Submit canonical spec JSON exactly as serialized (the bytes matter). */
    putNoise(sid, specJson) {
        return this.request(`/sessions/${sid}/noise`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: specJson,
        });
    }
    generate(sid) {
        return this.request(`/sessions/${sid}/generate`, { method: "POST" });
    }
    status(sid) {
        return this.request(`/sessions/${sid}/status`);
    }
    compare(sid, predictor, denoiser) {
        const params = new URLSearchParams();
        if (predictor)
            params.set("predictor", predictor);
        if (denoiser)
            params.set("denoiser", denoiser);
        const query = params.toString();
        return this.request(`/sessions/${sid}/compare${query ? "?" + query : ""}`);
    }
    mediaUrl(sid, which) {
        return `${this.base}/sessions/${sid}/media/${which}`;
    }
    /** Poll until generation finishes; one in-flight generation per session. */
    async waitForGeneration(sid, pollMs = 500, timeoutMs = 120000) {
        const deadline = Date.now() + timeoutMs;
        for (;;) {
            const status = await this.status(sid);
            if (status.status === "done" || status.status === "failed")
                return status;
            if (Date.now() > deadline)
                throw new ApiError(408, "Timeout", "generation did not finish in time");
            await new Promise((resolve) => setTimeout(resolve, pollMs));
        }
    }
}
