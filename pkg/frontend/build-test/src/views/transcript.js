// Step 2: review and correct the transcript words and their boundaries.
import { ApiError } from "../api.js";
import { clear, el } from "../dom.js";
export class TranscriptView {
    constructor(api, session, onSaved) {
        this.api = api;
        this.session = session;
        this.onSaved = onSaved;
        this.root = el("section", { class: "view transcript-view" });
        this.words = [];
        this.words = session.transcript.words.map((w) => ({ ...w }));
        this.render();
    }
    row(word, index) {
        const bind = (field, input) => {
            input.addEventListener("input", () => {
                if (field === "token") {
                    word.token = input.value;
                }
                else {
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
        return el("tr", {}, el("td", {}, token), el("td", {}, start), el("td", {}, end), el("td", {}, el("button", {
            onclick: () => {
                this.words.splice(index, 1);
                this.render();
            },
        }, "remove")));
    }
    render() {
        const errorBox = el("p", { class: "error", hidden: true });
        const table = el("table", { class: "word-table" }, el("thead", {}, el("tr", {}, el("th", {}, "token"), el("th", {}, "start (s)"), el("th", {}, "end (s)"), el("th", {}, ""))), el("tbody", {}, ...this.words.map((w, i) => this.row(w, i))));
        clear(this.root).append(el("h2", {}, "2. Transcript"), el("p", {}, "Correct recognized words and their time boundaries; the noise editor " +
            "uses them as its word ruler."), table, el("button", {
            onclick: () => {
                this.words.push({ token: "" });
                this.render();
            },
        }, "add word"), el("button", {
            class: "primary",
            onclick: async () => {
                errorBox.hidden = true;
                const transcript = {
                    language: this.session.transcript.language || "und",
                    words: this.words.filter((w) => w.token !== ""),
                };
                try {
                    const stored = await this.api.putTranscript(this.session.id, transcript);
                    this.onSaved(stored);
                }
                catch (err) {
                    errorBox.textContent = err instanceof ApiError ? `${err.kind}: ${err.message}` : String(err);
                    errorBox.hidden = false;
                }
            },
        }, "save transcript"), errorBox);
    }
}
