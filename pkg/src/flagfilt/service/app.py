"""The compute service.

Thin HTTP facade over the core package: every endpoint parses text inputs,
delegates to the compute modules, and serializes results.  Input problems
(malformed files, unknown elements, non-chain posets where a chain is
required) come back as 400 with a structured detail; failed verification
laws are ordinary 200 responses with ``ok: false``.
"""

from __future__ import annotations

import random

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..barcodes import barcode, compare_filtrations, rank_invariant
from ..filtrations import weight_filtration, weighted_graph_from_edge_rows
from ..formats import (
    InputFormatError,
    barcode_payload,
    format_grade,
    parse_complex,
    parse_edge_list,
    parse_graph,
    parse_poset,
    parse_weighted_graph,
    rank_payload,
    sniff_input_kind,
)
from ..generators import named_complex, named_poset
from ..homology import FieldConfig, betti_numbers, graph_homology
from ..svg import persistence_diagram_svg
from ..verify import SUITES, run_suites
from ..weighted import sublevel_functor
from . import schemas


def _bad_input(exc: Exception) -> HTTPException:
    line = getattr(exc, "line", None)
    return HTTPException(
        status_code=400, detail={"message": str(exc), "line": line}
    )


def _field(characteristic: int) -> FieldConfig:
    try:
        return FieldConfig(characteristic)
    except ValueError as exc:
        raise _bad_input(exc) from exc


def create_app() -> FastAPI:
    app = FastAPI(
        title="flagfilt",
        version=__version__,
        description=(
            "Persistent homology of finite spaces and weighted networks "
            "via clique-complex filtrations."
        ),
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/betti", response_model=schemas.BettiResponse)
    def betti(req: schemas.BettiRequest) -> schemas.BettiResponse:
        field = _field(req.characteristic)
        kind = req.kind
        if kind == "auto":
            kind = sniff_input_kind(req.content)
        try:
            if kind == "graph":
                g = parse_graph(req.content)
                max_dim = req.max_dim if req.max_dim is not None else 1
                summary = graph_homology(g, max_dim, field)
            else:
                s = parse_complex(req.content)
                max_dim = req.max_dim if req.max_dim is not None else max(s.dim, 0)
                summary = betti_numbers(s, max_dim, field)
        except (InputFormatError, ValueError) as exc:
            raise _bad_input(exc) from exc
        return schemas.BettiResponse(kind=kind, betti=list(summary.betti))

    @app.post("/barcode", response_model=schemas.BarcodeResponse)
    def barcode_endpoint(req: schemas.BarcodeRequest) -> schemas.BarcodeResponse:
        field = _field(req.characteristic)
        try:
            if req.weighted_graph is not None:
                poset = parse_poset(req.poset) if req.poset else None
                w = parse_weighted_graph(req.weighted_graph, poset, req.direction)
            elif req.edge_list is not None:
                rows, isolated = parse_edge_list(req.edge_list)
                if not rows and not isolated:
                    w = None  # empty network: empty barcode
                else:
                    w = weighted_graph_from_edge_rows(rows, req.direction, isolated)
            else:
                raise InputFormatError("provide an edge list or a weighted graph")
            if w is None:
                from ..barcodes import Barcode

                code = Barcode((), ())
            else:
                filtration = weight_filtration(w, req.direction, req.max_dim)
                code = barcode(filtration, req.max_dim, field)
        except (InputFormatError, ValueError) as exc:
            raise _bad_input(exc) from exc
        return schemas.BarcodeResponse(
            intervals=[
                schemas.IntervalModel(**row)
                for row in barcode_payload(code, req.include_zero_length)
            ],
            grades=[format_grade(g) for g in code.grades],
            svg=persistence_diagram_svg(code) if req.include_svg else None,
        )

    @app.post("/rank-invariant", response_model=schemas.RankInvariantResponse)
    def rank_endpoint(
        req: schemas.RankInvariantRequest,
    ) -> schemas.RankInvariantResponse:
        field = _field(req.characteristic)
        try:
            poset = parse_poset(req.poset) if req.poset else None
            w = parse_weighted_graph(req.weighted_graph, poset, req.direction)
            functor = sublevel_functor(w)
            pairs = [tuple(p) for p in req.pairs] if req.pairs is not None else None
            table = rank_invariant(functor, req.max_dim, field, pairs)
        except (InputFormatError, ValueError) as exc:
            raise _bad_input(exc) from exc
        return schemas.RankInvariantResponse(
            entries=[schemas.RankEntryModel(**row) for row in rank_payload(table)]
        )

    @app.post("/compare", response_model=schemas.CompareResponse)
    def compare_endpoint(req: schemas.CompareRequest) -> schemas.CompareResponse:
        field = _field(req.characteristic)
        try:
            rows, isolated = parse_edge_list(req.edge_list)
            result = compare_filtrations(
                rows,
                isolated,
                epsilons=req.epsilons,
                thresholds=req.thresholds,
                max_degree=req.max_dim,
                field=field,
            )
        except (InputFormatError, ValueError) as exc:
            raise _bad_input(exc) from exc
        return schemas.CompareResponse(
            weight_intervals=[
                schemas.IntervalModel(**row)
                for row in barcode_payload(result.weight_barcode)
            ],
            metric_intervals=[
                schemas.IntervalModel(**row)
                for row in barcode_payload(result.metric_barcode)
            ],
            stats=result.stats,
            warnings=list(result.warnings),
            weight_svg=persistence_diagram_svg(
                result.weight_barcode, title="edge-weight filtration"
            ),
            metric_svg=persistence_diagram_svg(
                result.metric_barcode, title="shortest-path metric filtration"
            ),
        )

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify_endpoint(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
        for name in req.suites:
            if name != "all" and name not in SUITES:
                raise _bad_input(
                    ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
                )
        try:
            poset = None
            if req.poset_text:
                poset = parse_poset(req.poset_text)
            elif req.poset:
                poset = named_poset(req.poset, random.Random(req.seed))
            complex_ = None
            if req.complex_text:
                complex_ = parse_complex(req.complex_text)
            elif req.complex_spec:
                complex_ = named_complex(req.complex_spec)
        except (InputFormatError, ValueError) as exc:
            raise _bad_input(exc) from exc
        reports = run_suites(req.suites, req.trials, req.seed, poset, complex_)
        suites = [
            schemas.SuiteResultModel(
                name=rep.name,
                trials=rep.trials,
                passes=rep.passes,
                ok=rep.ok,
                failures=[f"trial {o.index}: {o.detail}" for o in rep.failures],
            )
            for rep in reports
        ]
        return schemas.VerifyResponse(ok=all(s.ok for s in suites), suites=suites)

    return app
