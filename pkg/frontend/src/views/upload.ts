// Step 1: upload the original video (plus an optional word-alignment file).

import { ApiClient, ApiError } from "../api.js";
import { clear, el } from "../dom.js";
import { Session } from "../types.js";

export class UploadView {
  root = el("section", { class: "view upload-view" });

  constructor(private api: ApiClient, private onReady: (session: Session) => void) {
    this.render();
  }

  private render(): void {
    const mediaInput = el("input", { type: "file", id: "media-file" });
    const alignInput = el("input", { type: "file", id: "alignment-file", accept: ".json" });
    const errorBox = el("p", { class: "error", hidden: true });
    const button = el("button", {
      class: "primary",
      onclick: async () => {
        const media = mediaInput.files?.[0];
        if (!media) {
          errorBox.textContent = "choose a media file first";
          errorBox.hidden = false;
          return;
        }
        button.setAttribute("disabled", "");
        errorBox.hidden = true;
        try {
          const session = await this.api.createSession(media, media.name, alignInput.files?.[0]);
          this.onReady(session);
        } catch (err) {
          errorBox.textContent = err instanceof ApiError ? `${err.kind}: ${err.message}` : String(err);
          errorBox.hidden = false;
        } finally {
          button.removeAttribute("disabled");
        }
      },
    }, "Upload");

    clear(this.root).append(
      el("h2", {}, "1. Upload"),
      el("p", {}, "Pick the original clip; the server probes its streams and opens a session."),
      el("label", { for: "media-file" }, "media file"), mediaInput,
      el("label", { for: "alignment-file" }, "word alignment (optional transcript JSON)"), alignInput,
      button,
      errorBox,
    );
  }
}
