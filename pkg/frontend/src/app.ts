// Single-page console wiring the four workflow steps to the service API.

import { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";
import { NoiseTimelineModel } from "./timeline.js";
import { Session } from "./types.js";
import { CompareView } from "./views/compare.js";
import { NoiseEditorView } from "./views/editor.js";
import { TranscriptView } from "./views/transcript.js";
import { UploadView } from "./views/upload.js";

const api = new ApiClient("");

type Step = "upload" | "transcript" | "editor" | "compare";

class App {
  private session: Session | null = null;
  private model: NoiseTimelineModel | null = null;
  private step: Step = "upload";
  private main = el("main");
  private nav = el("nav", { class: "steps" });

  mount(root: HTMLElement): void {
    root.append(
      el("header", {},
        el("h1", {}, "video noise analysis console"),
        this.nav),
      this.main);
    this.render();
  }

  private go(step: Step): void {
    this.step = step;
    this.render();
  }

  private navButton(step: Step, label: string, enabled: boolean): HTMLElement {
    const attrs: Record<string, string | boolean | EventListener> = {
      class: this.step === step ? "active" : "",
      onclick: () => this.go(step),
    };
    if (!enabled) attrs["disabled"] = true;
    return el("button", attrs, label);
  }

  private render(): void {
    const haveSession = this.session !== null;
    const generated = haveSession && this.session!.status === "done";
    clear(this.nav).append(
      this.navButton("upload", "1 upload", true),
      this.navButton("transcript", "2 transcript", haveSession),
      this.navButton("editor", "3 noise", haveSession),
      this.navButton("compare", "4 compare", generated),
    );
    clear(this.main);
    if (this.step === "upload" || !this.session) {
      this.main.append(new UploadView(api, (session) => {
        this.session = session;
        this.model = new NoiseTimelineModel(session.meta);
        this.model.setWordBoundaries(session.transcript);
        if (session.spec) this.model.loadSpec(session.spec);
        this.go("transcript");
      }).root);
      return;
    }
    if (this.step === "transcript") {
      this.main.append(new TranscriptView(api, this.session, (transcript) => {
        this.session!.transcript = transcript;
        this.model!.setWordBoundaries(transcript);
        this.go("editor");
      }).root);
    } else if (this.step === "editor") {
      this.main.append(new NoiseEditorView(api, this.session, this.model!, async () => {
        this.session = await api.getSession(this.session!.id);
      }).root);
    } else {
      this.main.append(new CompareView(api, this.session).root);
    }
  }
}

new App().mount(document.getElementById("app")!);
