"""The `vna` command line.

Subcommands: gen-config (randomized noise configs), inject (apply a config
to one file), sweep (robustness benchmark over a severity interval),
report (merge/export curves), augment (mass-produce noised training
copies), synth (self-contained test clips), serve (the HTTP console).

Exit codes: 2 config errors, 3 media errors, 4 transcoder missing, 1 other
failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import evaluation, media_io, synth, text_noise
from .config import (
    RandomSpecParams,
    generate_random,
    load_config,
    params_to_json,
    to_json,
)
from .errors import ConfigError, MediaError, TranscoderMissing, VnaError


def _kinds(csv: str | None) -> tuple[str, ...]:
    return tuple(k.strip() for k in csv.split(",") if k.strip()) if csv else ()


def cmd_gen_config(args) -> int:
    params = RandomSpecParams(
        mode=args.mode,
        v_noise_list=_kinds(args.v_noise), v_noise_num=args.v_num,
        v_noise_ratio=args.v_ratio, v_noise_intensity=args.v_intensity,
        a_noise_list=_kinds(args.a_noise), a_noise_num=args.a_num,
        a_noise_ratio=args.a_ratio, a_noise_intensity=args.a_intensity,
        t_noise_list=_kinds(args.t_noise), t_noise_num=args.t_num,
        t_noise_ratio=args.t_ratio, t_noise_intensity=args.t_intensity,
        seed=args.seed,
    )
    if args.bind:
        meta = media_io.probe(args.bind)
        text = to_json(generate_random(params, meta))
    else:
        text = params_to_json(params)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


def cmd_inject(args) -> int:
    config = load_config(Path(args.config).read_text())
    transcript = text_noise.load_asr_variant(args.transcript) if args.transcript else None
    assets = media_io.load_asset_library(args.assets) if args.assets else None
    report = media_io.inject(
        args.input, args.output, config,
        transcript=transcript, transcript_out=args.transcript_out,
        assets=assets, lossless=args.lossless,
    )
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_obj(), indent=2))
    print(f"wrote {report.output_path}: {len(report.items)} item(s) applied, "
          f"{report.video_frames} frames, {report.audio_samples} samples "
          f"in {report.wall_time_s:.2f}s")
    for entry in report.skipped:
        print(f"  skipped {entry['kind']} [{entry['start_s']}, {entry['end_s']}]: {entry['reason']}")
    return 0


def cmd_sweep(args) -> int:
    plan_path = Path(args.plan)
    plan = evaluation.SweepPlan.from_json(plan_path.read_text(), base_dir=plan_path.parent)
    workdir = Path(args.workdir) if args.workdir else plan_path.parent / f"{plan.name}_work"
    report = evaluation.run_sweep(plan, workdir, max_workers=args.workers)
    report.write(args.out)
    print(f"{plan.name}: AIR acc2={report.air_acc2:.4f} f1={report.air_f1:.4f} "
          f"over {len(report.points)} levels -> {args.out}")
    return 0


def cmd_report(args) -> int:
    reports = [evaluation.RobustnessReport.read(p) for p in args.merge]
    wrote = []
    if args.csv:
        evaluation.export_curves(reports, "csv", args.csv)
        wrote.append(args.csv)
    if args.json_out:
        evaluation.export_curves(reports, "json", args.json_out)
        wrote.append(args.json_out)
    if args.svg:
        evaluation.export_curves(reports, "svg", args.svg)
        wrote.append(args.svg)
    if not wrote:
        for r in reports:
            print(f"{r.name} [{r.kind}] AIR acc2={r.air_acc2:.4f} f1={r.air_f1:.4f}")
    else:
        print("wrote " + ", ".join(wrote))
    return 0


def cmd_augment(args) -> int:
    config = load_config(Path(args.config).read_text())
    if not isinstance(config, RandomSpecParams):
        raise ConfigError("augment needs a random-params config (with 'mode'), not an explicit item spec")
    out = evaluation.augment_manifest(args.manifest, config, args.copies, args.out_dir,
                                      out_manifest=args.out_manifest)
    print(f"wrote augmented manifest {out}")
    return 0


def cmd_synth(args) -> int:
    if args.audio_only:
        synth.make_audio_clip(args.out, duration_s=args.duration, sample_rate=args.sample_rate, seed=args.seed)
    else:
        synth.make_test_clip(args.out, duration_s=args.duration, fps=args.fps, width=args.width,
                             height=args.height, sample_rate=args.sample_rate, seed=args.seed)
    print(f"wrote {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(args.data, ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vna", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-config", help="generate a randomized noise config")
    p.add_argument("--mode", default="random_full")
    p.add_argument("--v-noise", help="comma-separated video kinds")
    p.add_argument("--v-num", type=int, default=0)
    p.add_argument("--v-ratio", type=float, default=0.0)
    p.add_argument("--v-intensity", type=float, default=0.0)
    p.add_argument("--a-noise", help="comma-separated audio kinds")
    p.add_argument("--a-num", type=int, default=0)
    p.add_argument("--a-ratio", type=float, default=0.0)
    p.add_argument("--a-intensity", type=float, default=0.0)
    p.add_argument("--t-noise", help="comma-separated text kinds")
    p.add_argument("--t-num", type=int, default=0)
    p.add_argument("--t-ratio", type=float, default=0.0)
    p.add_argument("--t-intensity", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bind", metavar="MEDIA", help="emit concrete items laid out for this file")
    p.add_argument("--out", help="write the config here instead of stdout")
    p.set_defaults(func=cmd_gen_config)

    p = sub.add_parser("inject", help="apply a noise config to one media file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--transcript", help="transcript JSON for text noise")
    p.add_argument("--transcript-out")
    p.add_argument("--assets", help="scenario asset manifest JSON")
    p.add_argument("--lossless", action="store_true")
    p.add_argument("--report", help="write the injection report JSON here")
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser("sweep", help="run a robustness sweep plan")
    p.add_argument("--plan", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workdir")
    p.add_argument("--workers", type=int, default=1, help="instance materialization pool size")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="merge reports and export curves")
    p.add_argument("--merge", nargs="+", required=True, metavar="REPORT")
    p.add_argument("--csv")
    p.add_argument("--json", dest="json_out")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("augment", help="generate noised copies of a training manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--copies", type=int, default=1)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--out-manifest")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("synth", help="write a synthetic test clip")
    p.add_argument("--out", required=True)
    p.add_argument("--duration", type=float, default=10.0)
    p.add_argument("--fps", type=float, default=25.0)
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--height", type=int, default=480)
    p.add_argument("--sample-rate", type=int, default=16000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--audio-only", action="store_true")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("serve", help="run the HTTP console")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data", default="vna-data")
    p.add_argument("--ui", help="static webui bundle directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"vna: config error: {exc}", file=sys.stderr)
        return 2
    except MediaError as exc:
        print(f"vna: media error: {exc}", file=sys.stderr)
        return 3
    except TranscoderMissing as exc:
        print(f"vna: {exc}", file=sys.stderr)
        return 4
    except VnaError as exc:
        print(f"vna: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
