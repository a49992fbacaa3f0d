// Editable timeline model backing the noise editor.
//
// Holds draggable noise items on one track per modality, validates every
// edit against the probed media metadata before it reaches the service,
// and serializes to exactly the spec JSON the engine's CLI would write.
// Word-boundary snapping (driven by the transcript ruler) is a toggle,
// off by default.
import { isIndexUnit, sortItems, specToJson } from "./canonical.js";
import { KINDS } from "./types.js";
export class ValidationError extends Error {
}
const SNAP_WINDOW_S = 0.3;
export class NoiseTimelineModel {
    constructor(meta) {
        this.meta = meta;
        this.items = [];
        this.seed = 0;
        this.snapToWords = false;
        this.nextUid = 1;
        this.boundaries = [];
    }
    setWordBoundaries(transcript) {
        const marks = new Set();
        for (const word of transcript.words) {
            if (word.start_s != null)
                marks.add(word.start_s);
            if (word.end_s != null)
                marks.add(word.end_s);
        }
        this.boundaries = [...marks].sort((a, b) => a - b);
    }
    get wordBoundaries() {
        return this.boundaries;
    }
    snap(t) {
        if (!this.snapToWords || this.boundaries.length === 0)
            return t;
        let best = t;
        let bestDist = SNAP_WINDOW_S;
        for (const mark of this.boundaries) {
            const dist = Math.abs(mark - t);
            if (dist < bestDist) {
                best = mark;
                bestDist = dist;
            }
        }
        return best;
    }
    validate(item) {
        const kinds = KINDS[item.modality];
        if (!kinds)
            throw new ValidationError(`unknown modality ${item.modality}`);
        if (!kinds.includes(item.kind) && item.kind !== "reverb") {
            throw new ValidationError(`${item.kind} is not a ${item.modality} noise kind`);
        }
        if (!(item.intensity >= 0 && item.intensity <= 1)) {
            throw new ValidationError(`intensity must be in [0, 1], got ${item.intensity}`);
        }
        if (!(item.end_s > item.start_s)) {
            throw new ValidationError(`end must be after start (${item.start_s} .. ${item.end_s})`);
        }
        if (item.start_s < 0)
            throw new ValidationError("start must be >= 0");
        if (!isIndexUnit(item) && item.end_s > this.meta.duration_s + 1e-9) {
            throw new ValidationError(`segment ends at ${item.end_s} s but the clip lasts ${this.meta.duration_s} s`);
        }
    }
    addItem(item) {
        this.validate(item);
        const added = { ...item, uid: this.nextUid++ };
        this.items.push(added);
        return added;
    }
    removeItem(uid) {
        this.items = this.items.filter((it) => it.uid !== uid);
    }
    /** Drag an item to a new start, keeping its length; clamps to the clip. */
    moveItem(uid, newStart) {
        const item = this.mustFind(uid);
        const length = item.end_s - item.start_s;
        let start = this.snap(newStart);
        start = Math.min(Math.max(start, 0), this.meta.duration_s - length);
        const moved = { ...item, start_s: start, end_s: start + length };
        this.validate(moved);
        this.items = this.items.map((it) => (it.uid === uid ? moved : it));
        return moved;
    }
    resizeItem(uid, edge, t) {
        const item = this.mustFind(uid);
        const snapped = this.snap(t);
        const resized = edge === "start"
            ? { ...item, start_s: Math.max(0, Math.min(snapped, item.end_s - 1e-3)) }
            : { ...item, end_s: Math.min(this.meta.duration_s, Math.max(snapped, item.start_s + 1e-3)) };
        this.validate(resized);
        this.items = this.items.map((it) => (it.uid === uid ? resized : it));
        return resized;
    }
    mustFind(uid) {
        const item = this.items.find((it) => it.uid === uid);
        if (!item)
            throw new ValidationError(`no timeline item ${uid}`);
        return item;
    }
    toSpec() {
        const items = sortItems(this.items).map(({ uid, ...item }) => item);
        return { seed: this.seed, items };
    }
    toJson() {
        return specToJson(this.toSpec());
    }
    loadSpec(spec) {
        this.items = [];
        this.seed = spec.seed;
        for (const item of spec.items) {
            this.addItem(item);
        }
    }
}
