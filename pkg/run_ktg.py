from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from dotenv import load_dotenv

from src.cli.commands import COMMANDS
from src.config import KtgConfig
from src.errors import CertificateError, KtgError, ParseError
from src.relations.cache import configure_default_store
from src.relations.generators import RELATION_VERSION

_TIPS = {
    "dims": "python run_ktg.py dims --skeleton theta --degree 2",
    "reduce": "python run_ktg.py reduce element.txt",
    "apply": "python run_ktg.py apply element.txt --ops 'op switch e=1 | op unzip e=m_top | reduce'",
    "sweep": "python run_ktg.py sweep element.txt --tree m_bot,root,m_top",
    "check-pentagon": "python run_ktg.py check-pentagon phi.txt",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Chord diagrams on trivalent graph skeletons modulo 4T/VI, strand algebras and associators",
    )
    parser.add_argument("--version", action="version", version=f"ktg-calculus (relations {RELATION_VERSION})")
    parser.add_argument("--cache-dir", default=None, help="Directory for cached quotient bases (default: $KTG_CACHE_DIR)")
    parser.add_argument("--workers", type=int, default=None, help="Processes for basis computation (default: $KTG_WORKERS)")
    parser.add_argument("--log-level", default=None, help="Logging level on stderr (default: $KTG_LOG_LEVEL or WARNING)")
    parser.add_argument("--format", choices=["text", "machine"], default=None, help="Report format")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="Diagram, relation and quotient counts per degree")
    p.add_argument("--skeleton", required=True, help="Catalog name or skeleton file")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="Also compute the randomized-projection rank")

    p = sub.add_parser("enumerate", help="List canonical diagrams of one degree")
    p.add_argument("--skeleton", required=True)
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("reduce", help="Reduce an element file modulo 4T/VI")
    p.add_argument("input")

    p = sub.add_parser("apply", help="Run an operation pipeline on an element file")
    p.add_argument("input")
    p.add_argument("--ops", required=True, help="e.g. 'op switch e=3 | op unzip e=5 | reduce'")

    p = sub.add_parser("sweep", help="Present an element on strands by sweeping a spanning tree")
    p.add_argument("input")
    p.add_argument("--tree", required=True, help="Comma separated tree edges")

    p = sub.add_parser("check-pentagon", help="Pentagon residual of a series file on 3 strands")
    p.add_argument("phi")

    p = sub.add_parser("check-hexagon", help="Both hexagon residuals")
    p.add_argument("phi")
    p.add_argument("--r", default=None, help="Series file for R (default: exp(t12/2))")

    sub.add_parser("solve-degree2", help="Solve the associator equations through degree 2")

    p = sub.add_parser("properties", help="Symmetry properties of a series file or of the solved family")
    p.add_argument("phi", nargs="?", default=None)

    sub.add_parser("certify-nonexistence", help="Run the dumbbell obstruction")
    return parser


def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)

    config = KtgConfig.from_env()
    overrides = {}
    if args.cache_dir is not None:
        overrides["cache_dir"] = Path(args.cache_dir)
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.log_level is not None:
        overrides["log_level"] = args.log_level.upper()
    if args.format is not None:
        overrides["report_format"] = args.format
    config = dataclasses.replace(config, **overrides)

    logging.basicConfig(
        level=getattr(logging, config.log_level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    configure_default_store(config.cache_dir)

    try:
        text, code = COMMANDS[args.command](args, config)
    except CertificateError as exc:
        print(f"Certificate failed: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        tip = _TIPS.get(args.command, "python run_ktg.py --help")
        print(f"{exc}\n\nTip: check the path, for example:\n  {tip}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"Parse error: {exc}", file=sys.stderr)
        return 2
    except (KtgError, ValueError) as exc:
        print(f"Input error: {exc}\n\nTip: python run_ktg.py {args.command} --help", file=sys.stderr)
        return 2

    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
