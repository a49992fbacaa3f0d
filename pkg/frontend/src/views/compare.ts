// Step 4: side-by-side comparison of proxy features and model predictions
// for the original vs the generated noisy instance.

import { ApiClient, ApiError } from "../api.js";
import { chartSvg, compareCharts } from "../charts.js";
import { clear, el } from "../dom.js";
import { ComparisonPayload, Session } from "../types.js";

export class CompareView {
  root = el("section", { class: "view compare-view" });

  constructor(private api: ApiClient, private session: Session) {
    this.render(null);
  }

  private renderPayload(payload: ComparisonPayload): HTMLElement {
    const container = el("div", { class: "charts" });
    for (const chart of compareCharts(payload)) {
      const host = el("div", { class: "chart" });
      host.innerHTML = chartSvg(chart);
      container.append(host);
    }
    if (payload.original.text.length || payload.noisy.text.length) {
      container.append(
        el("h3", {}, "transcript"),
        el("p", { class: "tokens" }, "original: " + payload.original.text.join(" ")),
        el("p", { class: "tokens" }, "noisy: " + payload.noisy.text.join(" ")),
      );
    }
    if (payload.predictions) {
      container.append(
        el("h3", {}, `predictions (${payload.predictor})`),
        el("p", { class: "predictions" },
          `original: ${payload.predictions.original}  |  noisy: ${payload.predictions.noisy}`),
      );
    }
    return container;
  }

  private render(payload: ComparisonPayload | null): void {
    const errorBox = el("p", { class: "error", hidden: true });
    const predictor = el("input", { type: "text", placeholder: "predictor name (optional)" });
    const denoiser = el("input", { type: "text", placeholder: "denoiser tag (optional)" });
    const load = el("button", {
      class: "primary",
      onclick: async () => {
        errorBox.hidden = true;
        try {
          const next = await this.api.compare(
            this.session.id, predictor.value.trim() || undefined, denoiser.value.trim() || undefined);
          this.render(next);
        } catch (err) {
          errorBox.textContent = err instanceof ApiError ? `${err.kind}: ${err.message}` : String(err);
          errorBox.hidden = false;
        }
      },
    }, "load comparison");

    clear(this.root).append(
      el("h2", {}, "4. Compare"),
      el("p", {}, "Feature series for original and noisy media share one time axis; " +
        "all values come from the service payload verbatim."),
      el("div", { class: "compare-controls" },
        el("label", {}, "model"), predictor,
        el("label", {}, "denoiser"), denoiser,
        load),
      errorBox,
      payload ? this.renderPayload(payload) : el("p", { class: "hint" },
        "generate a noisy instance first, then load the comparison"),
    );
  }
}
