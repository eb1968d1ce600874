"""Command-line client.

The CLI reads input files, ships their contents to the compute service,
and writes result files.  By default the service runs in process (no
network involved); pass ``--server URL`` to talk to a running instance
instead.  Exit codes: 0 success, 1 verification failure, 2 input or
transport error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .formats import atomic_write_text, canonical_json
from .verify import SUITES

_DIRECTIONS = {
    "asc": "ascending",
    "ascending": "ascending",
    "desc": "descending",
    "descending": "descending",
}


class ServiceClient:
    """Uniform POST interface over the in-process app or a remote server."""

    def __init__(self, server: str | None = None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            from fastapi.testclient import TestClient

            from .service import create_app

            self._client = TestClient(create_app())

    def post(self, path: str, payload: dict) -> tuple[int, object]:
        response = self._client.post(path, json=payload)
        try:
            data = response.json()
        except ValueError:
            data = {}
        return response.status_code, data


def _err(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _report_http_error(status: int, data: object) -> int:
    detail = data.get("detail") if isinstance(data, dict) else None
    if isinstance(detail, dict):
        message = detail.get("message", "bad input")
        line = detail.get("line")
        _err(message if line is None else f"{message}")
    else:
        _err(f"request failed with status {status}: {detail}")
    return 2


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _formats(args) -> set[str]:
    out = {f.strip() for f in args.format.split(",") if f.strip()}
    unknown = out - {"json", "csv", "svg"}
    if unknown:
        raise ValueError(f"unknown output format(s): {', '.join(sorted(unknown))}")
    return out


def _write(args, name: str, text: str) -> None:
    path = os.path.join(args.out, name)
    atomic_write_text(path, text)
    print(f"wrote {path}")


def _add_common(p: argparse.ArgumentParser, default_format: str = "json") -> None:
    p.add_argument("--server", help="base URL of a running service (default: in process)")
    p.add_argument("--field", type=int, default=2, help="coefficient field characteristic")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument(
        "--format",
        default=default_format,
        help="comma-separated outputs: json,csv,svg",
    )


def cmd_betti(args) -> int:
    client = ServiceClient(args.server)
    payload = {
        "content": _read(args.input),
        "kind": args.kind,
        "characteristic": args.field,
        "max_dim": args.max_dim,
    }
    status, data = client.post("/betti", payload)
    if status != 200:
        return _report_http_error(status, data)
    print(f"betti: {data['betti']}")
    if "json" in _formats(args):
        _write(args, "betti.json", canonical_json({"betti": data["betti"], "kind": data["kind"]}))
    return 0


def cmd_barcode(args) -> int:
    client = ServiceClient(args.server)
    content = _read(args.input)
    formats = _formats(args)
    payload = {
        "direction": _DIRECTIONS[args.direction],
        "characteristic": args.field,
        "max_dim": args.max_dim,
        "include_zero_length": args.include_zero_length,
        "include_svg": "svg" in formats,
    }
    stripped = [ln.strip() for ln in content.splitlines()]
    if args.poset or any(ln.startswith(("edge:", "vertex:")) for ln in stripped):
        payload["weighted_graph"] = content
        if args.poset:
            payload["poset"] = _read(args.poset)
    else:
        payload["edge_list"] = content
    status, data = client.post("/barcode", payload)
    if status != 200:
        return _report_http_error(status, data)
    intervals = data["intervals"]
    infinite = sum(1 for iv in intervals if iv["death"] is None)
    print(f"intervals: {len(intervals)} ({infinite} infinite)")
    if "json" in formats:
        _write(args, "barcode.json", canonical_json(intervals))
    if "csv" in formats:
        _write(args, "barcode.csv", _intervals_csv(intervals))
    if "svg" in formats and data.get("svg"):
        _write(args, "barcode.svg", data["svg"])
    return 0


def _intervals_csv(intervals: list[dict]) -> str:
    lines = ["dim,birth,death"]
    for iv in intervals:
        death = "" if iv["death"] is None else iv["death"]
        lines.append(f"{iv['dim']},{iv['birth']},{death}")
    return "\n".join(lines) + "\n"


def cmd_rank_invariant(args) -> int:
    client = ServiceClient(args.server)
    payload = {
        "weighted_graph": _read(args.input),
        "poset": _read(args.poset) if args.poset else None,
        "direction": _DIRECTIONS[args.direction],
        "characteristic": args.field,
        "max_dim": args.max_dim,
    }
    status, data = client.post("/rank-invariant", payload)
    if status != 200:
        return _report_http_error(status, data)
    entries = data["entries"]
    print(f"rank entries: {len(entries)}")
    if "json" in _formats(args):
        _write(args, "rank_invariant.json", canonical_json(entries))
    return 0


def cmd_compare(args) -> int:
    client = ServiceClient(args.server)
    payload = {
        "edge_list": _read(args.input),
        "epsilons": args.epsilons.split(",") if args.epsilons else None,
        "thresholds": args.thresholds.split(",") if args.thresholds else None,
        "characteristic": args.field,
        "max_dim": args.max_dim,
    }
    status, data = client.post("/compare", payload)
    if status != 200:
        return _report_http_error(status, data)
    for warning in data["warnings"]:
        print(f"warning: {warning}", file=sys.stderr)
    formats = _formats(args)
    if "json" in formats:
        _write(args, "weight_barcode.json", canonical_json(data["weight_intervals"]))
        _write(args, "metric_barcode.json", canonical_json(data["metric_intervals"]))
        _write(
            args,
            "compare_stats.json",
            canonical_json({"stats": data["stats"], "warnings": data["warnings"]}),
        )
    if "csv" in formats:
        _write(args, "weight_barcode.csv", _intervals_csv(data["weight_intervals"]))
        _write(args, "metric_barcode.csv", _intervals_csv(data["metric_intervals"]))
    if "svg" in formats:
        _write(args, "weight_diagram.svg", data["weight_svg"])
        _write(args, "metric_diagram.svg", data["metric_svg"])
    n_w = len(data["weight_intervals"])
    n_m = len(data["metric_intervals"])
    print(f"weight branch: {n_w} intervals; metric branch: {n_m} intervals")
    return 0


def cmd_verify(args) -> int:
    client = ServiceClient(args.server)
    payload = {
        "suites": args.suites if args.suites else ["all"],
        "trials": args.trials,
        "seed": args.seed,
        "poset": args.poset,
        "poset_text": _read(args.poset_file) if args.poset_file else None,
        "complex_spec": args.complex,
        "complex_text": _read(args.complex_file) if args.complex_file else None,
    }
    status, data = client.post("/verify", payload)
    if status != 200:
        return _report_http_error(status, data)
    for suite in data["suites"]:
        mark = "pass" if suite["ok"] else "FAIL"
        print(f"{suite['name']}: {suite['passes']}/{suite['trials']} [{mark}]")
        for failure in suite["failures"][:5]:
            print(f"  {failure}")
        if len(suite["failures"]) > 5:
            print(f"  ... {len(suite['failures']) - 5} more failures")
    return 0 if data["ok"] else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagfilt",
        description=(
            "Persistent homology of finite spaces and weighted networks "
            "via clique-complex filtrations."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="Betti numbers of a complex or graph file")
    p.add_argument("input", help="complex file (faces) or graph file (edge:/vertex:)")
    p.add_argument("--kind", choices=("auto", "complex", "graph"), default="auto")
    p.add_argument("--max-dim", type=int, default=None)
    _add_common(p)
    p.set_defaults(handler=cmd_betti)

    p = sub.add_parser("barcode", help="persistence barcode of a weighted network")
    p.add_argument("input", help="edge list CSV (u,v,w) or weighted graph file")
    p.add_argument("--poset", help="poset file naming the weight elements")
    p.add_argument("--direction", choices=sorted(_DIRECTIONS), default="asc")
    p.add_argument("--max-dim", type=int, default=1)
    p.add_argument("--include-zero-length", action="store_true")
    _add_common(p)
    p.set_defaults(handler=cmd_barcode)

    p = sub.add_parser(
        "rank-invariant", help="rank invariant of a poset-weighted graph"
    )
    p.add_argument("input", help="weighted graph file (vertex:/edge: with weights)")
    p.add_argument("--poset", help="poset file naming the weight elements")
    p.add_argument("--direction", choices=sorted(_DIRECTIONS), default="asc")
    p.add_argument("--max-dim", type=int, default=1)
    _add_common(p)
    p.set_defaults(handler=cmd_rank_invariant)

    p = sub.add_parser(
        "compare", help="edge-weight vs shortest-path-metric filtration barcodes"
    )
    p.add_argument("input", help="edge list CSV (u,v,w)")
    p.add_argument("--epsilons", help="comma-separated metric scales")
    p.add_argument("--thresholds", help="comma-separated weight thresholds")
    p.add_argument("--max-dim", type=int, default=1)
    p.add_argument(
        "--seed",
        type=int,
        default=0,
        help="accepted for interface uniformity; the comparison is deterministic",
    )
    _add_common(p, default_format="json,svg")
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("verify", help="machine-check the categorical laws")
    p.add_argument(
        "suites",
        nargs="*",
        metavar="suite",
        help=f"suites to run: {', '.join(SUITES)}, or all (default: all)",
    )
    p.add_argument("--all", dest="run_all", action="store_true", help="run every suite")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--poset", help="named poset spec, e.g. chain3, diamond, random5")
    p.add_argument("--poset-file", help="poset file to verify over")
    p.add_argument("--complex", help="named complex spec for the subdivision suite")
    p.add_argument("--complex-file", help="complex file for the subdivision suite")
    p.add_argument("--server")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "run_all", False):
        args.suites = ["all"]
    try:
        return args.handler(args)
    except FileNotFoundError as exc:
        _err(f"cannot read {exc.filename}")
        return 2
    except SystemExit:
        raise
    except Exception as exc:  # transport and unexpected errors
        _err(str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
