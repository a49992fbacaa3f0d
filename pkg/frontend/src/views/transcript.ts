// Step 2: review and correct the transcript words and their boundaries.

import { ApiClient, ApiError } from "../api.js";
import { clear, el } from "../dom.js";
import { Session, Transcript, Word } from "../types.js";

export class TranscriptView {
  root = el("section", { class: "view transcript-view" });
  private words: Word[] = [];

  constructor(private api: ApiClient, private session: Session,
              private onSaved: (t: Transcript) => void) {
    this.words = session.transcript.words.map((w) => ({ ...w }));
    this.render();
  }

  private row(word: Word, index: number): HTMLElement {
    const bind = (field: "token" | "start_s" | "end_s", input: HTMLInputElement) => {
      input.addEventListener("input", () => {
        if (field === "token") {
          word.token = input.value;
        } else {
          word[field] = input.value === "" ? undefined : Number(input.value);
        }
      });
    };
    const token = el("input", { type: "text", value: word.token });
    const start = el("input", { type: "number", step: "0.01", value: word.start_s?.toString() ?? "" });
    const end = el("input", { type: "number", step: "0.01", value: word.end_s?.toString() ?? "" });
    bind("token", token);
    bind("start_s", start);
    bind("end_s", end);
    return el("tr", {},
      el("td", {}, token), el("td", {}, start), el("td", {}, end),
      el("td", {}, el("button", {
        onclick: () => {
          this.words.splice(index, 1);
          this.render();
        },
      }, "remove")));
  }

  private render(): void {
    const errorBox = el("p", { class: "error", hidden: true });
    const table = el("table", { class: "word-table" },
      el("thead", {}, el("tr", {}, el("th", {}, "token"), el("th", {}, "start (s)"),
        el("th", {}, "end (s)"), el("th", {}, ""))),
      el("tbody", {}, ...this.words.map((w, i) => this.row(w, i))));

    clear(this.root).append(
      el("h2", {}, "2. Transcript"),
      el("p", {}, "Correct recognized words and their time boundaries; the noise editor " +
        "uses them as its word ruler."),
      table,
      el("button", {
        onclick: () => {
          this.words.push({ token: "" });
          this.render();
        },
      }, "add word"),
      el("button", {
        class: "primary",
        onclick: async () => {
          errorBox.hidden = true;
          const transcript: Transcript = {
            language: this.session.transcript.language || "und",
            words: this.words.filter((w) => w.token !== ""),
          };
          try {
            const stored = await this.api.putTranscript(this.session.id, transcript);
            this.onSaved(stored);
          } catch (err) {
            errorBox.textContent = err instanceof ApiError ? `${err.kind}: ${err.message}` : String(err);
            errorBox.hidden = false;
          }
        },
      }, "save transcript"),
      errorBox,
    );
  }
}
