"""Command-line entry point: ``fusionbench run | sweep | synth``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .combiners import RULE_NAMES
from .config import load_config
from .dataset import ManifestRecord, synth_corpus, write_manifest
from .errors import ConfigError, FusionBenchError
from .imageio import binary_to_gray, write_pgm
from .pipeline import SWEEP_PARAMS, format_sweep, run_pipeline, sweep
from .report import FORMATS, emit_report

EXIT_OK, EXIT_CONFIG, EXIT_DATA = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are config errors
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fusionbench", description="Multiple-classifier fusion experiments on 32x32 glyphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run one pipeline and print its report")
    run.add_argument("--config", required=True)
    run.add_argument("--hypothesis", choices=RULE_NAMES)
    run.add_argument("--seed", type=int)
    run.add_argument("--format", choices=FORMATS, default="text")
    run.add_argument("--out")

    sw = sub.add_parser("sweep", help="classifier-3 accuracy over a parameter grid")
    sw.add_argument("--config", required=True)
    sw.add_argument("--param", required=True, choices=sorted(SWEEP_PARAMS))
    sw.add_argument("--values", required=True, help="comma-separated integers")
    sw.add_argument("--seed", type=int)
    sw.add_argument("--out")

    sy = sub.add_parser("synth", help="write a synthetic corpus as PGM files plus a manifest")
    sy.add_argument("--classes", type=int, required=True)
    sy.add_argument("--per-class", type=int, default=25)
    sy.add_argument("--noise", type=float, default=0.02)
    sy.add_argument("--seed", type=int, required=True)
    sy.add_argument("--out", required=True, help="manifest path; images go to <stem>_images/ beside it")
    return p


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _parse_values(raw: str) -> list[int]:
    try:
        values = [int(v) for v in raw.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"--values must be comma-separated integers, got {raw!r}") from None
    if not values:
        raise ConfigError("--values is empty")
    return values


def _synth(args) -> None:
    try:
        samples = synth_corpus(args.classes, args.per_class, args.noise, args.seed)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    manifest = Path(args.out)
    img_dir = manifest.parent / f"{manifest.stem}_images"
    img_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for s in samples:
        name = f"{s.label:03d}_{s.id:05d}.pgm"
        # ink is stored dark on light, as on a scanned page
        write_pgm(img_dir / name, binary_to_gray(s.image))
        records.append(ManifestRecord(f"{img_dir.name}/{name}", s.label, s.book))
    write_manifest(manifest, records)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            cfg = load_config(args.config, hypothesis=args.hypothesis, seed=args.seed)
            _write(emit_report(run_pipeline(cfg), args.format), args.out)
        elif args.command == "sweep":
            cfg = load_config(args.config, seed=args.seed)
            _write(format_sweep(args.param, sweep(cfg, args.param, _parse_values(args.values))), args.out)
        else:
            _synth(args)
    except ConfigError as exc:
        print(f"fusionbench: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FusionBenchError, OSError) as exc:
        print(f"fusionbench: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
