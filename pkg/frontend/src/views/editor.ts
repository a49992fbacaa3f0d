// Step 3: edit the noise spec (form entry and direct timeline dragging),
// then generate and preview the noisy instance.

import { ApiClient, ApiError } from "../api.js";
import { clear, el } from "../dom.js";
import { NoiseTimelineModel, TimelineItem, ValidationError } from "../timeline.js";
import { KINDS, Modality, Session } from "../types.js";

const TRACKS: Modality[] = ["audio", "video", "text", "feature"];

export class NoiseEditorView {
  root = el("section", { class: "view editor-view" });

  constructor(private api: ApiClient, private session: Session,
              public model: NoiseTimelineModel,
              private onGenerated: () => void) {
    this.render();
  }

  private kindSelect(modality: Modality): HTMLSelectElement {
    const select = el("select", { class: "kind-select" });
    for (const kind of KINDS[modality]) {
      select.append(el("option", { value: kind }, kind));
    }
    return select;
  }

  private form(errorBox: HTMLElement): HTMLElement {
    const modality = el("select", {}, ...TRACKS.map((m) => el("option", { value: m }, m)));
    let kinds = this.kindSelect("audio");
    const kindsSlot = el("span", {}, kinds);
    modality.addEventListener("change", () => {
      kinds = this.kindSelect(modality.value as Modality);
      clear(kindsSlot as HTMLElement).append(kinds);
    });
    const start = el("input", { type: "number", step: "0.1", value: "0" });
    const end = el("input", { type: "number", step: "0.1", value: "1" });
    const intensity = el("input", { type: "range", min: "0", max: "1", step: "0.05", value: "0.5" });
    const intensityOut = el("span", { class: "intensity-value" }, "0.5");
    intensity.addEventListener("input", () => (intensityOut.textContent = intensity.value));
    const params = el("input", { type: "text", placeholder: '{"asset": "park"} (optional)' });

    return el("div", { class: "item-form" },
      el("label", {}, "modality"), modality,
      el("label", {}, "kind"), kindsSlot,
      el("label", {}, "start (s)"), start,
      el("label", {}, "end (s)"), end,
      el("label", {}, "intensity"), intensity, intensityOut,
      el("label", {}, "params"), params,
      el("button", {
        onclick: () => {
          errorBox.hidden = true;
          try {
            this.model.addItem({
              modality: modality.value as Modality,
              kind: kinds.value,
              start_s: Number(start.value),
              end_s: Number(end.value),
              intensity: Number(intensity.value),
              params: params.value.trim() ? JSON.parse(params.value) : undefined,
            });
            this.render();
          } catch (err) {
            errorBox.textContent = err instanceof ValidationError ? err.message : String(err);
            errorBox.hidden = false;
          }
        },
      }, "add noise item"),
    );
  }

  private timeline(): HTMLElement {
    const duration = this.model.meta.duration_s;
    const box = el("div", { class: "timeline" });
    const ruler = el("div", { class: "ruler" });
    for (const mark of this.model.wordBoundaries) {
      ruler.append(el("div", {
        class: "word-mark",
        style: `left:${(mark / duration) * 100}%`,
        title: `${mark.toFixed(2)} s`,
      }));
    }
    box.append(ruler);
    for (const track of TRACKS) {
      const lane = el("div", { class: "lane", "data-track": track },
        el("span", { class: "lane-label" }, track));
      for (const item of this.model.items.filter((it) => it.modality === track)) {
        lane.append(this.block(item, duration, lane));
      }
      box.append(lane);
    }
    return box;
  }

  private block(item: TimelineItem, duration: number, lane: HTMLElement): HTMLElement {
    const left = (item.start_s / duration) * 100;
    const width = ((item.end_s - item.start_s) / duration) * 100;
    const node = el("div", {
      class: "noise-block",
      style: `left:${left}%;width:${width}%`,
      title: `${item.kind} [${item.start_s.toFixed(2)}, ${item.end_s.toFixed(2)}] @ ${item.intensity}`,
    }, item.kind);
    node.addEventListener("pointerdown", (down: PointerEvent) => {
      down.preventDefault();
      node.setPointerCapture(down.pointerId);
      const laneRect = lane.getBoundingClientRect();
      const grabOffset = down.clientX - node.getBoundingClientRect().left;
      const onMove = (move: PointerEvent) => {
        const t = ((move.clientX - grabOffset - laneRect.left) / laneRect.width) * duration;
        try {
          this.model.moveItem(item.uid, t);
          const moved = this.model.items.find((it) => it.uid === item.uid)!;
          node.style.left = `${(moved.start_s / duration) * 100}%`;
        } catch {
          // invalid drop positions are simply not applied
        }
      };
      const onUp = () => {
        node.removeEventListener("pointermove", onMove);
        node.removeEventListener("pointerup", onUp);
        this.render();
      };
      node.addEventListener("pointermove", onMove);
      node.addEventListener("pointerup", onUp);
    });
    return node;
  }

  private itemTable(): HTMLElement {
    const rows = this.model.items.map((item) => el("tr", {},
      el("td", {}, item.modality), el("td", {}, item.kind),
      el("td", {}, item.start_s.toFixed(2)), el("td", {}, item.end_s.toFixed(2)),
      el("td", {}, String(item.intensity)),
      el("td", {}, el("button", {
        onclick: () => {
          this.model.removeItem(item.uid);
          this.render();
        },
      }, "remove")),
    ));
    return el("table", { class: "noise-table" },
      el("thead", {}, el("tr", {},
        el("th", {}, "modality"), el("th", {}, "kind"), el("th", {}, "start"),
        el("th", {}, "end"), el("th", {}, "intensity"), el("th", {}, ""))),
      el("tbody", {}, ...rows));
  }

  private render(): void {
    const errorBox = el("p", { class: "error", hidden: true });
    const statusLine = el("p", { class: "status" }, `status: ${this.session.status}`);
    const snap = el("input", { type: "checkbox", id: "snap-toggle" });
    if (this.model.snapToWords) snap.setAttribute("checked", "");
    snap.addEventListener("change", () => (this.model.snapToWords = snap.checked));

    const preview = el("div", { class: "preview" });
    if (this.session.status === "done" && this.session.noisy) {
      const url = this.api.mediaUrl(this.session.id, "noisy");
      preview.append(
        el("h3", {}, "noisy preview"),
        this.session.meta.has_video
          ? el("video", { controls: true, src: url })
          : el("audio", { controls: true, src: url }),
      );
    }

    const generate = el("button", {
      class: "primary",
      onclick: async () => {
        errorBox.hidden = true;
        statusLine.textContent = "status: submitting";
        try {
          await this.api.putNoise(this.session.id, this.model.toJson());
          await this.api.generate(this.session.id);
          statusLine.textContent = "status: queued";
          const status = await this.api.waitForGeneration(this.session.id);
          this.session = await this.api.getSession(this.session.id);
          statusLine.textContent = `status: ${status.status}${status.error ? ` (${status.error})` : ""}`;
          this.render();
          if (status.status === "done") this.onGenerated();
        } catch (err) {
          errorBox.textContent = err instanceof ApiError ? `${err.kind}: ${err.message}` : String(err);
          errorBox.hidden = false;
        }
      },
    }, "generate");

    clear(this.root).append(
      el("h2", {}, "3. Noise editor"),
      el("p", {}, "Add items with the form or drag them on the timeline; the injected " +
        "noise table below mirrors the spec exactly as it will be submitted."),
      this.form(errorBox),
      el("div", { class: "snap-row" }, snap,
        el("label", { for: "snap-toggle" }, "snap drags to word boundaries")),
      this.timeline(),
      this.itemTable(),
      el("details", {}, el("summary", {}, "spec JSON"),
        el("pre", { class: "spec-json" }, this.model.toJson())),
      generate,
      statusLine,
      errorBox,
      preview,
    );
  }
}
