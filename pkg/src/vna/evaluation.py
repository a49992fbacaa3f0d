"""Global robustness benchmark: sweeps, metrics, interval robustness, curves.

A sweep plan names one noise kind, a severity interval, a dataset manifest
and a predictor.  For each severity level the runner materializes noised
copies of every instance (seeded per (plan seed, level, instance) so reruns
are byte-identical), obtains predictions through a language-neutral
contract (manifest JSON in, `id,prediction` CSV out), computes Acc-2 and
weighted F1, and aggregates them into interval-robustness scores: the mean
over sampled levels (normalized, on the accuracy scale) and the area under
the accuracy-imperfection curve (mean times interval width).
"""

from __future__ import annotations

import csv
import json
import math
import shlex
import subprocess
import time
from dataclasses import dataclass, field
from pathlib import Path

from .config import NoiseItem, NoiseSpec
from .errors import (
    BadInterval,
    EmptyLevel,
    MissingLabel,
    MissingLevel,
    ParseError,
    PredictorFailure,
)
from .feature_noise import apply_item as apply_feature_item
from .feature_noise import read_features, write_features
from .registry import resolve_kind
from .seeds import derive_seed

N_INTERIOR_POINTS = 10


@dataclass(frozen=True)
class Interval:
    min: float
    max: float
    step: float = 0.0

    def __post_init__(self):
        if not self.min < self.max:
            raise BadInterval(f"interval needs min < max, got [{self.min}, {self.max}]")
        if self.step < 0:
            raise BadInterval(f"interval step must be >= 0, got {self.step}")


def default_points(interval: Interval) -> list[float]:
    """The 10 uniform interior points of [min, max], endpoints excluded."""
    lo, hi = interval.min, interval.max
    return [lo + k * (hi - lo) / (N_INTERIOR_POINTS + 1) for k in range(1, N_INTERIOR_POINTS + 1)]


def step_points(interval: Interval) -> list[float]:
    """The [min, max, step] grid, endpoints included (benchmark-table style)."""
    if interval.step <= 0:
        raise BadInterval("step grid needs a positive step")
    count = int(round((interval.max - interval.min) / interval.step))
    return [interval.min + k * interval.step for k in range(count + 1)]


def air(metric_at, interval: Interval, normalize: bool = True, points: list[float] | None = None) -> float:
    """Interval robustness of a per-level metric.

    Normalized (default): the mean of the metric over the sampled levels,
    which lands on the same scale as the metric itself.  Unnormalized: the
    approximated area under the metric-vs-severity curve, i.e. mean times
    interval width.
    """
    pts = default_points(interval) if points is None else list(points)
    values = []
    for sigma in pts:
        if sigma not in metric_at:
            raise MissingLevel(f"no metric value for level {sigma!r}")
        values.append(metric_at[sigma])
    # A constant metric must aggregate to exactly that constant.
    mean = values[0] if max(values) == min(values) else math.fsum(values) / len(values)
    return mean if normalize else mean * (interval.max - interval.min)


@dataclass(frozen=True)
class PredictionRecord:
    instance_id: str
    label: float
    prediction: float
    sigma: float


def acc2_f1(records, label_type: str = "regression") -> dict:
    """Binary accuracy and weighted F1 at one noise level.

    Regression labels/predictions binarize at zero (negative vs
    non-negative); two-class labels are used directly.
    """
    records = list(records)
    if not records:
        raise EmptyLevel("no prediction records at this level")
    if label_type == "regression":
        y = [1 if r.label >= 0 else 0 for r in records]
        p = [1 if r.prediction >= 0 else 0 for r in records]
    else:
        y = [int(r.label) for r in records]
        p = [int(r.prediction) for r in records]
    n = len(records)
    acc2 = sum(1 for a, b in zip(y, p) if a == b) / n
    f1 = 0.0
    for cls in (0, 1):
        support = sum(1 for a in y if a == cls)
        if support == 0:
            continue
        tp = sum(1 for a, b in zip(y, p) if a == cls and b == cls)
        fp = sum(1 for a, b in zip(y, p) if a != cls and b == cls)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / support
        cls_f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        f1 += support / n * cls_f1
    return {"acc2": acc2, "f1": f1}


@dataclass(frozen=True)
class PredictorSpec:
    """How to obtain predictions: run a command, or read a precomputed file.

    Command templates receive {manifest} (the per-level manifest JSON) and
    {out} (where to write `id,prediction` CSV); without {out} the CSV is
    read from stdout.  Precomputed files are `id,sigma,prediction` CSV.
    """

    mode: str = "command"
    command: str | None = None
    predictions: str | None = None
    label_type: str = "regression"
    stateless: bool = True
    name: str = "predictor"

    @classmethod
    def from_obj(cls, obj: dict) -> "PredictorSpec":
        if not isinstance(obj, dict):
            raise ParseError("predictor: expected an object")
        mode = obj.get("mode", "command")
        if mode == "command" and not obj.get("command"):
            raise ParseError("predictor: command mode needs a 'command' template")
        if mode == "precomputed" and not obj.get("predictions"):
            raise ParseError("predictor: precomputed mode needs a 'predictions' file")
        if mode not in ("command", "precomputed"):
            raise ParseError(f"predictor: unknown mode {mode!r}")
        return cls(
            mode=mode,
            command=obj.get("command"),
            predictions=obj.get("predictions"),
            label_type=obj.get("label_type", "regression"),
            stateless=obj.get("stateless", True),
            name=obj.get("name", "predictor"),
        )


@dataclass(frozen=True)
class Instance:
    id: str
    path: str
    label: float
    carrier: str  # "media" | "features"
    split: str = "test"


def load_manifest(path) -> list[Instance]:
    """Dataset manifest: {"instances": [{"id", "media"|"features", "label", "split"?}]}."""
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"cannot read manifest {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} line {exc.lineno}: {exc.msg}") from None
    if not isinstance(obj, dict) or not isinstance(obj.get("instances"), list):
        raise ParseError(f"{path}: manifest must contain an 'instances' array")
    root = path.parent
    instances = []
    for i, entry in enumerate(obj["instances"]):
        if "label" not in entry:
            raise MissingLabel(f"{path}: instances[{i}] has no label")
        if "media" in entry:
            carrier, rel = "media", entry["media"]
        elif "features" in entry:
            carrier, rel = "features", entry["features"]
        else:
            raise ParseError(f"{path}: instances[{i}] names neither 'media' nor 'features'")
        instances.append(Instance(
            id=str(entry.get("id", i)),
            path=str(root / rel),
            label=float(entry["label"]),
            carrier=carrier,
            split=entry.get("split", "test"),
        ))
    return instances


@dataclass(frozen=True)
class SweepPlan:
    """One noise kind, a severity interval, a dataset and a predictor."""

    kind: str
    interval: Interval
    manifest: str
    predictor: PredictorSpec
    points: tuple[float, ...] | None = None
    seed: int = 0
    repeats: int = 1
    item_params: dict | None = None
    name: str = "sweep"

    def levels(self) -> list[float]:
        return list(self.points) if self.points is not None else default_points(self.interval)

    @classmethod
    def from_json(cls, text: str, base_dir: Path | None = None) -> "SweepPlan":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"plan line {exc.lineno}: {exc.msg}") from None
        kind = resolve_kind(obj.get("kind", ""))
        raw_interval = obj.get("interval")
        if raw_interval is None:
            interval = Interval(*kind.interval)
        elif isinstance(raw_interval, dict):
            interval = Interval(raw_interval["min"], raw_interval["max"], raw_interval.get("step", 0.0))
        else:
            interval = Interval(*raw_interval)
        manifest = obj.get("manifest")
        if not manifest:
            raise ParseError("plan: missing 'manifest'")
        if base_dir is not None:
            manifest = str(base_dir / manifest)
        points = obj.get("points")
        return cls(
            kind=kind.name,
            interval=interval,
            manifest=manifest,
            predictor=PredictorSpec.from_obj(obj.get("predictor", {})),
            points=tuple(points) if points is not None else None,
            seed=obj.get("seed", 0),
            repeats=int(obj.get("repeats", 1)),
            item_params=obj.get("item_params"),
            name=obj.get("name", "sweep"),
        )


@dataclass
class RobustnessReport:
    """Per-level metrics plus the aggregated interval-robustness scalars."""

    name: str
    kind: str
    indicator: str
    interval: Interval
    points: list[float]
    per_level: list[dict]  # {"sigma", "acc2", "f1", "n"}
    air_acc2: float
    air_f1: float
    air_acc2_area: float
    air_f1_area: float
    metadata: dict = field(default_factory=dict)

    def metric_at(self, metric: str) -> dict[float, float]:
        return {row["sigma"]: row[metric] for row in self.per_level}

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "indicator": self.indicator,
            "interval": {"min": self.interval.min, "max": self.interval.max, "step": self.interval.step},
            "points": self.points,
            "per_level": self.per_level,
            "air_acc2": self.air_acc2,
            "air_f1": self.air_f1,
            "air_acc2_area": self.air_acc2_area,
            "air_f1_area": self.air_f1_area,
            "metadata": self.metadata,
        }

    def write(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_obj(), indent=2))

    @classmethod
    def from_obj(cls, obj: dict) -> "RobustnessReport":
        iv = obj["interval"]
        return cls(
            name=obj["name"], kind=obj["kind"], indicator=obj.get("indicator", ""),
            interval=Interval(iv["min"], iv["max"], iv.get("step", 0.0)),
            points=list(obj["points"]), per_level=list(obj["per_level"]),
            air_acc2=obj["air_acc2"], air_f1=obj["air_f1"],
            air_acc2_area=obj["air_acc2_area"], air_f1_area=obj["air_f1_area"],
            metadata=obj.get("metadata", {}),
        )

    @classmethod
    def read(cls, path) -> "RobustnessReport":
        return cls.from_obj(json.loads(Path(path).read_text()))


# --- prediction transport ----------------------------------------------------

def _parse_predictions_csv(text: str, source: str) -> list[tuple[str, float]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or (lineno == 1 and line.lower().replace(" ", "") == "id,prediction"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise PredictorFailure(f"{source} line {lineno}: expected 'id,prediction', got {line!r}")
        try:
            rows.append((parts[0], float(parts[1])))
        except ValueError:
            raise PredictorFailure(f"{source} line {lineno}: prediction {parts[1]!r} is not a number") from None
    return rows


def run_command_predictor(spec: PredictorSpec, manifest_path: Path, out_dir: Path) -> dict[str, float]:
    """Invoke the external predictor once and collect its id->prediction map."""
    out_csv = out_dir / "predictions.csv"
    command = spec.command.replace("{manifest}", str(manifest_path)).replace("{out}", str(out_csv))
    proc = subprocess.run(shlex.split(command), capture_output=True, text=True)
    if proc.returncode != 0:
        tail = (proc.stderr or proc.stdout or "").strip()[-2000:]
        raise PredictorFailure(f"predictor exited {proc.returncode}: {tail}")
    if "{out}" in spec.command:
        try:
            text = out_csv.read_text()
        except OSError:
            raise PredictorFailure(f"predictor did not write {out_csv}") from None
        source = str(out_csv)
    else:
        text, source = proc.stdout, "predictor stdout"
    return dict(_parse_predictions_csv(text, source))


def _load_precomputed(path) -> list[tuple[str, float, float]]:
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (lineno == 1 and [c.strip().lower() for c in row] == ["id", "sigma", "prediction"]):
                continue
            if len(row) != 3:
                raise PredictorFailure(f"{path} line {lineno}: expected 'id,sigma,prediction'")
            try:
                rows.append((row[0].strip(), float(row[1]), float(row[2])))
            except ValueError:
                raise PredictorFailure(f"{path} line {lineno}: non-numeric sigma/prediction") from None
    return rows


# --- the sweep runner --------------------------------------------------------

def _materialize_media(instance: Instance, kind, sigma: float, seed: int, out_path: Path,
                       item_params: dict | None) -> None:
    from .media_io import inject, probe  # late import: keeps feature-only sweeps transcoder-free

    meta = probe(instance.path)
    item = NoiseItem(kind.modality, kind.name, 0.0, meta.duration_s,
                     kind.intensity_for(sigma), params=item_params)
    inject(instance.path, out_path, NoiseSpec(items=(item,), seed=seed))


def _materialize_features(instance: Instance, kind, sigma: float, seed: int, out_path: Path) -> None:
    fs = read_features(instance.path)
    item = NoiseItem("feature", kind.name, 0, max(fs.timesteps, 1), kind.intensity_for(sigma),
                     params={"unit": "index"})
    write_features(out_path, apply_feature_item(fs, item, seed))


def run_sweep(plan: SweepPlan, workdir, max_workers: int = 1) -> RobustnessReport:
    """Materialize noised instances per level, collect predictions, aggregate.

    Instances are independent work units; max_workers > 1 materializes them
    in a bounded thread pool (each instance's output depends only on its own
    derived seed, so pool size never changes the bytes).  Rerunning an
    identical plan in the same workdir rewrites byte-identical noised
    inputs; with a deterministic predictor the resulting report is
    identical apart from the metadata timestamp.
    """
    from concurrent.futures import ThreadPoolExecutor

    kind = resolve_kind(plan.kind)
    instances = load_manifest(plan.manifest)
    workdir = Path(workdir)
    points = plan.levels()
    precomputed = _load_precomputed(plan.predictor.predictions) if plan.predictor.mode == "precomputed" else None

    per_level = []
    for pi, sigma in enumerate(points):
        level_dir = workdir / f"level_{pi:03d}"
        level_dir.mkdir(parents=True, exist_ok=True)
        records: list[PredictionRecord] = []
        for rep in range(plan.repeats):
            rep_dir = level_dir if plan.repeats == 1 else level_dir / f"rep_{rep}"
            rep_dir.mkdir(exist_ok=True)

            def materialize(instance, rep=rep):
                seed = (derive_seed(plan.seed, repr(sigma), instance.id) if plan.repeats == 1
                        else derive_seed(plan.seed, repr(sigma), instance.id, rep))
                noised = rep_dir / f"{instance.id}{Path(instance.path).suffix}"
                if instance.carrier == "features":
                    _materialize_features(instance, kind, sigma, seed, noised)
                else:
                    _materialize_media(instance, kind, sigma, seed, noised, plan.item_params)
                return {"id": instance.id, "path": str(noised), "carrier": instance.carrier}

            if max_workers > 1:
                with ThreadPoolExecutor(max_workers=max_workers) as pool:
                    entries = list(pool.map(materialize, instances))
            else:
                entries = [materialize(instance) for instance in instances]
            manifest_path = rep_dir / "manifest.json"
            manifest_path.write_text(json.dumps(
                {"sigma": sigma, "kind": kind.name, "instances": entries}, indent=2))

            if precomputed is not None:
                predictions = {pid: pred for pid, s, pred in precomputed
                               if math.isclose(s, sigma, rel_tol=1e-9, abs_tol=1e-12)}
            else:
                predictions = run_command_predictor(plan.predictor, manifest_path, rep_dir)
            for instance in instances:
                if instance.id not in predictions:
                    raise PredictorFailure(f"no prediction for instance {instance.id!r} at level {sigma}")
                records.append(PredictionRecord(instance.id, instance.label, predictions[instance.id], sigma))
        metrics = acc2_f1(records, plan.predictor.label_type)
        per_level.append({"sigma": sigma, "acc2": metrics["acc2"], "f1": metrics["f1"], "n": len(records)})

    acc_at = {row["sigma"]: row["acc2"] for row in per_level}
    f1_at = {row["sigma"]: row["f1"] for row in per_level}
    return RobustnessReport(
        name=plan.name,
        kind=kind.name,
        indicator=kind.indicator,
        interval=plan.interval,
        points=points,
        per_level=per_level,
        air_acc2=air(acc_at, plan.interval, points=points),
        air_f1=air(f1_at, plan.interval, points=points),
        air_acc2_area=air(acc_at, plan.interval, normalize=False, points=points),
        air_f1_area=air(f1_at, plan.interval, normalize=False, points=points),
        metadata={
            "predictor": plan.predictor.name,
            "manifest": str(plan.manifest),
            "seed": plan.seed,
            "repeats": plan.repeats,
            "created": time.strftime("%Y-%m-%dT%H:%M:%S"),
        },
    )


# --- curve export ------------------------------------------------------------

def export_curves(reports, fmt: str, path) -> None:
    """Write accuracy-imperfection curves as csv (one report), json, or svg."""
    reports = [reports] if isinstance(reports, RobustnessReport) else list(reports)
    path = Path(path)
    if fmt == "csv":
        if len(reports) != 1:
            raise ParseError("csv export takes exactly one report; merge with json or svg")
        r = reports[0]
        lines = [f"# name: {r.name}", f"# kind: {r.kind}", f"# indicator: {r.indicator}",
                 "sigma,acc2,f1"]
        lines += [f"{row['sigma']!r},{row['acc2']!r},{row['f1']!r}" for row in r.per_level]
        path.write_text("\n".join(lines) + "\n")
    elif fmt == "json":
        payload = [{"name": r.name, "kind": r.kind, "indicator": r.indicator,
                    "points": [{"sigma": row["sigma"], "acc2": row["acc2"], "f1": row["f1"]}
                               for row in r.per_level]} for r in reports]
        path.write_text(json.dumps(payload, indent=2))
    elif fmt == "svg":
        path.write_text(render_curve_svg(reports))
    else:
        raise ParseError(f"unknown export format {fmt!r}")


def import_curves(path) -> list[tuple[float, float, float]]:
    """Read back a csv export; floats round-trip exactly (repr formatting)."""
    rows = []
    for line in Path(path).read_text().splitlines():
        if not line or line.startswith("#") or line.startswith("sigma"):
            continue
        sigma, acc2, f1 = line.split(",")
        rows.append((float(sigma), float(acc2), float(f1)))
    return rows


# --- augmentation data generation ---------------------------------------------

def augment_manifest(manifest_path, params, copies: int, out_dir, out_manifest=None) -> Path:
    """Mass-produce noised copies of a training manifest for augmentation.

    Each copy of each media instance gets an independent randomized spec
    (seed derived from (params.seed, instance id, copy index)); the
    augmented manifest lists originals plus copies with the same labels.
    Training itself is the predictor owner's concern.
    """
    from dataclasses import replace as _replace

    from .media_io import inject

    instances = load_manifest(manifest_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for instance in instances:
        key = "media" if instance.carrier == "media" else "features"
        entries.append({"id": instance.id, key: str(Path(instance.path).resolve()),
                        "label": instance.label, "split": instance.split})
        if instance.carrier != "media":
            continue  # feature files are augmented at train time via the drop APIs
        for copy in range(copies):
            seed = derive_seed(params.seed, "augment", instance.id, copy)
            out_path = out_dir / f"{instance.id}.aug{copy}{Path(instance.path).suffix}"
            inject(instance.path, out_path, _replace(params, seed=seed))
            entries.append({"id": f"{instance.id}.aug{copy}", "media": str(out_path.resolve()),
                            "label": instance.label, "split": instance.split})
    manifest_out = Path(out_manifest) if out_manifest else out_dir / "manifest.json"
    manifest_out.write_text(json.dumps({"instances": entries}, indent=2))
    return manifest_out


_SVG_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def render_curve_svg(reports, metric: str = "acc2", width: int = 640, height: int = 400) -> str:
    """A single metric-vs-severity plot, one polyline series per report."""
    pad = 50
    xs = [row["sigma"] for r in reports for row in r.per_level]
    ys = [row[metric] for r in reports for row in r.per_level]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys + [0.0]), max(ys + [1.0])
    if x1 == x0:
        x1 = x0 + 1.0

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="{height - 12}" text-anchor="middle" font-size="12">'
        f'{reports[0].indicator}</text>',
        f'<text x="14" y="{height / 2:.1f}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 14 {height / 2:.1f})">{metric}</text>',
    ]
    for i, r in enumerate(reports):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        pts = " ".join(f"{sx(row['sigma']):.2f},{sy(row[metric]):.2f}" for row in r.per_level)
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = pad + 16 * i
        parts.append(f'<rect x="{width - pad - 130}" y="{ly - 9}" width="10" height="10" fill="{color}"/>')
        parts.append(f'<text x="{width - pad - 115}" y="{ly}" font-size="11" class="legend">'
                     f'{r.metadata.get("predictor", r.name)}</text>')
    parts.append("</svg>")
    return "\n".join(parts)
