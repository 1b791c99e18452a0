"""Command-line driver: verify caps, run construction recipes, extract spectra."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .capcore import completeness, is_periodic, oplus, plotkin_double, vertex_set
from .catalog import (
    PG4_MISSED_POINT,
    PG5_PERIODIC_UNCOVERED,
    SEED_ANCHORS,
    pg4_near_halfslice,
    pg5_aperiodic_halfslice,
    pg5_periodic_halfslice,
    pg7_plane_slice,
    pg7_standard_cap,
    pg9_weight_slice,
    seed_partition,
)
from .constructions import (
    ConstructionCertificate,
    ConstructionError,
    c4_construct,
    family_cap,
    family_size_by_s,
    pair_layout,
    partition_condition,
    partition_double,
    partition_to_cap,
    reference_complement,
    saturate,
    tangent_cap,
)
from .gf2geom import (
    PointParseError,
    PointSet,
    check_dim,
    format_point,
    iter_points,
    parse_point,
    span,
)
from .search import (
    SearchConstraints,
    example31_extension,
    partition_search,
    spectrum,
)
from .slices import (
    FrameError,
    ScaleRefusal,
    SliceFrame,
    best_disjoint_frame,
    canonical_frame,
    decompose,
    frame_for,
    global_completeness_equations,
)


class CapFileError(ValueError):
    """Malformed cap file, with the offending line number when known."""


# ------------------------------------------------------------- cap file format


def read_cap_text(text: str) -> tuple[PointSet, dict]:
    """Parse 'PG <n> 2' header, '# key: value' comments, one point per line."""
    n = None
    points: list[int] = []
    comments: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, value = body.split(":", 1)
                comments[key.strip()] = value.strip()
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "PG" or parts[2] != "2" or not parts[1].isdigit():
                raise CapFileError(f"line {lineno}: expected header 'PG <n> 2', got {line!r}")
            n = int(parts[1])
            try:
                check_dim(n)
            except Exception as exc:
                raise CapFileError(f"line {lineno}: {exc}") from exc
            continue
        try:
            p = parse_point(line, n)
        except PointParseError as exc:
            raise CapFileError(f"line {lineno}: {exc}") from exc
        if p in points:
            raise CapFileError(f"line {lineno}: duplicate point {line!r}")
        points.append(p)
    if n is None:
        raise CapFileError("missing 'PG <n> 2' header")
    return PointSet.of(n, points), comments


def read_cap_file(path: str) -> tuple[PointSet, dict]:
    try:
        with open(path, "r", encoding="utf-8") as fp:
            text = fp.read()
    except OSError as exc:
        raise CapFileError(f"cannot read {path}: {exc.strerror}") from exc
    return read_cap_text(text)


def format_cap_text(s: PointSet, comments: dict | None = None, style: str | None = None) -> str:
    """Canonical cap file text: sorted points, index form for n <= 9, hex beyond."""
    style = style or ("idx" if s.n <= 9 else "hex")
    lines = [f"PG {s.n} 2"]
    for key, value in (comments or {}).items():
        lines.append(f"# {key}: {value}")
    lines.extend(format_point(p, s.n, style) for p in s)
    return "\n".join(lines) + "\n"


def _tokens(points, n: int, style: str | None) -> list[str]:
    style = style or ("idx" if n <= 9 else "hex")
    return [format_point(p, n, style) for p in sorted(points)]


def _parse_frame_arg(text: str, n: int) -> tuple[int, int]:
    """Two hyperplane normals, ';'-separated (or ',' when neither token has one)."""
    toks = text.split(";") if ";" in text else text.split(",")
    if len(toks) != 2:
        raise CapFileError(
            f"--frame wants two normals, e.g. '4,5' or '0,1;4', got {text!r}"
        )
    return parse_point(toks[0], n), parse_point(toks[1], n)


def _kv_params(tokens) -> dict:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise CapFileError(f"expected key=value, got {tok!r}")
        key, value = tok.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _int_param(params: dict, key: str, required: bool = True, default=None) -> int | None:
    if key not in params:
        if required:
            raise CapFileError(f"missing parameter {key}=")
        return default
    try:
        return int(params[key], 0)
    except ValueError as exc:
        raise CapFileError(f"parameter {key}={params[key]!r} is not an integer") from exc


def _bool_param(params: dict, key: str, default=None):
    if key not in params:
        return default
    val = params[key].lower()
    if val in ("1", "true", "yes"):
        return True
    if val in ("0", "false", "no"):
        return False
    raise CapFileError(f"parameter {key}={params[key]!r} is not a boolean")


def _point_list(text: str, n: int) -> PointSet:
    return PointSet.of(n, (parse_point(tok, n) for tok in text.split(";") if tok.strip()))


# ------------------------------------------------------------------- commands


def _offending_triple(s: PointSet):
    pts = s.sorted_points()
    present = set(pts)
    for i, x in enumerate(pts):
        for y in pts[i + 1 :]:
            z = x ^ y
            if z > y and z in present:
                return [x, y, z]
    return None


def cmd_verify(capfile: str, frame_arg: str | None = None, style: str | None = None):
    """Report cap-ness, completeness, vertices, and the slice table if framed."""
    s, _ = read_cap_file(capfile)
    n = s.n
    rep = completeness(s)
    vs = vertex_set(s)
    report = {
        "command": "verify",
        "n": n,
        "size": len(s),
        "is_cap": rep.is_cap,
        "offending_triple": None,
        "is_complete": rep.is_complete,
        "uncovered": _tokens(rep.uncovered, n, style),
        "periodic": is_periodic(s),
        "vertices": _tokens(vs.points, n, style) if not vs.degenerate else [],
        "vertices_degenerate": vs.degenerate,
        "frame": None,
        "slices": None,
    }
    if not rep.is_cap:
        report["offending_triple"] = _tokens(_offending_triple(s), n, style)

    frame = None
    if frame_arg is not None:
        m1, m2 = _parse_frame_arg(frame_arg, n)
        frame = frame_for(s, m1, m2)
        report["frame"] = {"normals": _tokens([m1, m2], n, style), "discovered": False}
    elif rep.is_cap:
        try:
            frame = best_disjoint_frame(s)
        except ScaleRefusal:
            frame = None
        if frame is not None:
            m1, m2 = sorted((frame.m_a, frame.m_b))
            report["frame"] = {"normals": _tokens([m1, m2], n, style), "discovered": True}

    if frame is not None and rep.is_cap:
        d = decompose(s, frame)
        eq = global_completeness_equations(d)
        report["slices"] = {
            "c_size": len(d.c),
            "a_size": len(d.a),
            "b_size": len(d.b),
            "r": d.r,
            "t": d.t,
            "u": d.u,
            "s": d.s,
            "m": d.m,
            "pair_tags": list(d.pair_tags),
            "eq3_per_pair": list(d.pair_eq3),
            "eq1": eq.eq1,
            "eq2": eq.eq2,
            "affine_complement_case": d.empty_c_is_affine_complement,
        }
    code = 0 if rep.is_cap and rep.is_complete else 1
    return report, code


def _double_input(s: PointSet, vtok: str) -> tuple[PointSet, int]:
    """Resolve the doubling direction, lifting to PG(n+1,2) when needed."""
    if vtok == "auto":
        inside = span(s)
        for p in iter_points(s.n):
            if p not in inside:
                return s, p
        # full-span set: embed in one more dimension and double across it
        return PointSet(s.n + 1, s.bits), 1 << (s.n + 1)
    try:
        return s, parse_point(vtok, s.n)
    except PointParseError:
        lifted = PointSet(s.n + 1, s.bits)
        return lifted, parse_point(vtok, lifted.n)


def cmd_construct(kind: str, params: dict, frame_arg: str | None = None,
                  seed: int = 0, style: str | None = None):
    """Run one recipe (tangent | family | partition | c4 | double) and verify it."""
    recipe: dict = {"kind": kind}
    partition_report = None
    if kind == "tangent":
        n = _int_param(params, "n")
        frame = None
        if frame_arg is not None:
            m1, m2 = _parse_frame_arg(frame_arg, n)
            frame = SliceFrame(n, m1, m2, m1 ^ m2)
        if "A" not in params:
            raise CapFileError("tangent needs A=<point;point;...>")
        a = _point_list(params["A"], n)
        c0 = parse_point(params["c0"], n) if "c0" in params else None
        cap, cert = tangent_cap(a, c0, frame)
        recipe.update({"n": n, "a_size": len(a)})
    elif kind == "family":
        n = _int_param(params, "n")
        r = _int_param(params, "r")
        s_count = _int_param(params, "s")
        cap, cert = family_cap(n, r, s_count)
        recipe.update({"n": n, "r": r, "s": s_count})
    elif kind == "c4":
        n = _int_param(params, "n")
        m = _int_param(params, "m")
        s_count = _int_param(params, "s")
        cap, cert = c4_construct(n, m, s_count)
        recipe.update({"n": n, "m": m, "s": s_count})
    elif kind == "partition":
        k = _int_param(params, "k")
        source = params.get("from", "example52")
        a0 = _int_param(params, "a0", required=False, default=SEED_ANCHORS[0])
        a1 = _int_param(params, "a1", required=False, default=SEED_ANCHORS[1])
        a01 = _int_param(params, "a01", required=False, default=SEED_ANCHORS[2])
        if source == "example52":
            p = seed_partition()
            while p.k < k:
                p = partition_double(p, a0, a1, a01)
            if p.k != k:
                raise CapFileError(f"cannot reach k={k} from the k=4 seed by doubling")
        elif source == "search":
            r = _int_param(params, "r", required=False, default=2)
            mode = params.get("mode", "exhaustive")
            p = partition_search(k, r, mode=mode, seed=seed)
            if p is None:
                raise ConstructionError(f"no covering partition found for k={k}, r={r}")
        else:
            raise CapFileError(f"unknown partition source {source!r}")
        cap = partition_to_cap(p)
        rep = completeness(cap)
        n_amb = p.k + p.r + 1
        predicted = family_size_by_s(n_amb, p.r, 1 << (n_amb - p.r - 1))
        cert = ConstructionCertificate(
            theorem="partition",
            parameters={"k": p.k, "r": p.r, "n": n_amb},
            predicted_size=predicted,
            verified=bool(partition_condition(p))
            and rep.is_cap
            and rep.is_complete
            and len(cap) == predicted,
            details={"source": source},
        )
        partition_report = {
            "k": p.k,
            "r": p.r,
            "parts": {str(w): sorted(xs) for w, xs in p.parts.items()},
            "passes": bool(partition_condition(p)),
        }
        recipe.update({"k": k, "from": source})
    elif kind == "double":
        if "in" not in params:
            raise CapFileError("double needs in=<capfile>")
        s, _ = read_cap_file(params["in"])
        s, v = _double_input(s, params.get("v", "auto"))
        cap = plotkin_double(s, v)
        rep = completeness(cap)
        cert = ConstructionCertificate(
            theorem="double",
            parameters={"v": v},
            predicted_size=2 * len(s),
            verified=rep.is_cap and len(cap) == 2 * len(s),
            details={"complete": rep.is_complete},
        )
        recipe.update({"in": params["in"], "v": format_point(v, s.n, style or "idx")})
    else:
        raise CapFileError(f"unknown recipe kind {kind!r}")

    rep = completeness(cap)
    report = {
        "command": "construct",
        "recipe": recipe,
        "certificate": {
            "theorem": cert.theorem,
            "parameters": {k: v for k, v in sorted(cert.parameters.items())},
            "predicted_size": cert.predicted_size,
            "verified": cert.verified,
        },
        "n": cap.n,
        "size": len(cap),
        "is_cap": rep.is_cap,
        "is_complete": rep.is_complete,
        "cap_file": format_cap_text(
            cap, {"recipe": kind, "size": str(len(cap))}, style
        ),
    }
    if partition_report is not None:
        report["partition"] = partition_report
    return report, (0 if cert.verified and rep.is_cap else 1), cap


def cmd_spectrum(params: dict, style: str | None = None):
    """Size set plus witnesses under the given constraint tokens."""
    n = _int_param(params, "n")
    constraints = SearchConstraints(
        n=n,
        min_size=_int_param(params, "min", required=False),
        max_size=_int_param(params, "max", required=False),
        c_size=_int_param(params, "C", required=False),
        c_span_dim=_int_param(params, "span", required=False),
        frame_disjoint=_bool_param(params, "disjoint", default=False),
        large=_bool_param(params, "large", default=False),
        periodic=_bool_param(params, "periodic", default=None),
    )
    mode = params.get("mode")
    sp = spectrum(constraints, mode=mode)
    report = {
        "command": "spectrum",
        "constraints": {
            "n": n,
            "c_size": constraints.c_size,
            "c_span_dim": constraints.c_span_dim,
            "min_size": constraints.min_size,
            "max_size": constraints.max_size,
            "frame_disjoint": constraints.frame_disjoint,
            "large": constraints.large,
            "periodic": constraints.periodic,
        },
        "mode": sp.meta.get("mode"),
        "sizes": list(sp.sizes),
        "witnesses": {str(k): _tokens(v, n, style) for k, v in sp.witnesses.items()},
        "meta": {k: v for k, v in sp.meta.items() if k != "mode"},
    }
    return report, 0, sp


def cmd_examples(style: str | None = None):
    """Replay the worked reference configurations and re-verify every stated fact."""
    facts = []

    def fact(example: str, name: str, expected, actual):
        facts.append(
            {
                "example": example,
                "fact": name,
                "expected": expected,
                "actual": actual,
                "ok": expected == actual,
            }
        )

    # weight-slice seed in PG(9,2)
    e9 = pg9_weight_slice()
    a_sharp, v = e9.a_sharp, e9.v
    fact("weight-slice", "seed size", 66, len(a_sharp))
    nsec = sum(1 for x in a_sharp for y in a_sharp if x < y and x ^ y == v)
    fact("weight-slice", "secants through v", 16, nsec)
    union = a_sharp | PointSet.of(9, (v ^ p for p in a_sharp))
    fact("weight-slice", "size of seed union its v-shift", 116, len(union))
    try:
        a_ext = example31_extension(a_sharp, v)
        shifted = PointSet.of(9, (v ^ p for p in a_ext))
        ext_facts = {
            "size": len(a_ext),
            "periodic": shifted == a_ext,
            "sums_fill": oplus(a_ext, a_ext) == canonical_frame(9).h_inf_points,
        }
    except ConstructionError as exc:
        ext_facts = {"error": str(exc)}
    fact(
        "weight-slice",
        "half-slice extension",
        {"size": 128, "periodic": True, "sums_fill": True},
        ext_facts,
    )

    # aperiodic half-slice tangent cap in PG(5,2)
    e = pg5_aperiodic_halfslice()
    cap, cert = tangent_cap(e.a, e.c0, e.frame)
    fact("aperiodic-halfslice", "size", 17, len(cap))
    fact("aperiodic-halfslice", "complete", True, cert.details["complete"])

    # periodic half-slice in PG(5,2)
    e = pg5_periodic_halfslice()
    cap, cert = tangent_cap(e.a, e.c0, e.frame)
    va = vertex_set(e.a)
    fact("periodic-halfslice", "A-vertices", ["0"], _tokens(va.points, 5, style))
    expected_unc = [parse_point(t, 5) for t in PG5_PERIODIC_UNCOVERED.split()]
    fact(
        "periodic-halfslice",
        "missed points",
        _tokens(expected_unc, 5, style),
        _tokens(cert.details["uncovered"], 5, style),
    )
    t_cap, t_cert = saturate(cap)
    fact("periodic-halfslice", "saturation is a complete cap", True,
         t_cert.details["t_is_cap"] and t_cert.details["t_complete"])

    # near half-slice in PG(4,2)
    e = pg4_near_halfslice()
    cap, cert = tangent_cap(e.a, e.c0, e.frame)
    missed = parse_point(PG4_MISSED_POINT, 4)
    fact("near-halfslice", "missed point",
         [format_point(missed, 4, style or "idx")],
         _tokens(cert.details["uncovered"], 4, style))
    fact("near-halfslice", "adjoining it completes", True, bool(cert.details.get("t_complete")))
    fact("near-halfslice", "vertex of the completion",
         [format_point(missed ^ e.c0, 4, style or "idx")],
         _tokens(cert.details.get("t_vertices") or [], 4, style))

    # plane-slice frame bookkeeping in PG(7,2)
    e7 = pg7_plane_slice()
    _, f_points, _, layout = pair_layout(e7.frame, e7.c)
    fact("plane-slice", "F points", ["0", "1", "0,1"],
         [format_point(p, 7, style or "idx") for p in f_points])
    fact("plane-slice", "first A-coset", ["6", "0,6", "1,6", "0,1,6"],
         [format_point(p, 7, style or "idx") for p in layout[0][0]])
    a0, _ = reference_complement(e7.frame, span(f_points))
    fact("plane-slice", "reference anchor", "6", format_point(a0, 7, style or "idx"))

    # standard 35-point cap in PG(7,2)
    p = seed_partition()
    fact("standard-35", "partition passes", True, bool(partition_condition(p)))
    cap35 = partition_to_cap(p)
    ref = pg7_standard_cap()
    fact("standard-35", "reproduces the reference cap", True, cap35 == ref)
    rep35 = completeness(cap35)
    fact("standard-35", "complete cap of size 35", {"cap": True, "complete": True, "size": 35},
         {"cap": rep35.is_cap, "complete": rep35.is_complete, "size": len(cap35)})
    d = decompose(cap35, canonical_frame(7))
    fact("standard-35", "all sixteen pairs singleton-anchored", 16, d.s)

    # doubling chain
    q = p
    chain_ok = {}
    for k in (5, 6, 7):
        q = partition_double(q, *SEED_ANCHORS)
        chain_ok[f"k={k}"] = bool(partition_condition(q))
    fact("doubling-chain", "lifted partitions pass", {"k=5": True, "k=6": True, "k=7": True}, chain_ok)
    sizes = {}
    q = p
    for k, n_amb in ((5, 8), (6, 9)):
        q = partition_double(q, *SEED_ANCHORS)
        capk = partition_to_cap(q)
        repk = completeness(capk)
        sizes[f"n={n_amb}"] = {"size": len(capk), "complete": repk.is_cap and repk.is_complete}
    fact("doubling-chain", "chain caps",
         {"n=8": {"size": 67, "complete": True}, "n=9": {"size": 131, "complete": True}}, sizes)

    report = {
        "command": "examples",
        "facts": facts,
        "failures": [f for f in facts if not f["ok"]],
    }
    return report, (0 if all(f["ok"] for f in facts) else 1)


# ----------------------------------------------------------------------- main


def _write_out(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fp:
        fp.write(text)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pg2caps",
        description="Verify, construct, and search complete caps in PG(n,2).",
    )
    def add_common(p, top=False):
        # top-level carries the real defaults; subparsers must not reset them
        d = dict if top else (lambda **kw: {**kw, "default": argparse.SUPPRESS})
        p.add_argument("--format", choices=("idx", "hex"), **d(default=None),
                       help="point style in outputs (default: idx for n<=9, hex beyond)")
        p.add_argument("--out", **d(default=None),
                       help="cap file (construct), directory (spectrum), or report path (verify)")
        p.add_argument("--seed", type=int, **d(default=0), help="seed for randomized searches")
        p.add_argument("--jobs", type=int, **d(default=1),
                       help="accepted for interface stability; work runs sequentially")

    add_common(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="verify a cap file")
    p_verify.add_argument("capfile")
    p_verify.add_argument("--frame", default=None,
                          help="two hyperplane normals, e.g. '4,5' or '0,1;4'")
    add_common(p_verify)

    p_con = sub.add_parser("construct", help="run a construction recipe")
    p_con.add_argument("kind", choices=("tangent", "family", "partition", "c4", "double"))
    p_con.add_argument("params", nargs="*", help="key=value tokens")
    p_con.add_argument("--frame", default=None)
    add_common(p_con)

    p_spec = sub.add_parser("spectrum", help="achieved complete-cap sizes")
    p_spec.add_argument("params", nargs="*", help="key=value tokens, e.g. n=5 C=3 mode=construct")
    add_common(p_spec)

    p_ex = sub.add_parser("examples", help="replay the reference configurations")
    add_common(p_ex)

    args = parser.parse_args(argv)
    style = args.format
    try:
        if args.command == "verify":
            report, code = cmd_verify(args.capfile, args.frame, style)
            text = json.dumps(report, sort_keys=True, indent=2)
            if args.out:
                _write_out(args.out, text + "\n")
            print(text)
            return code
        if args.command == "construct":
            params = _kv_params(args.params)
            report, code, cap = cmd_construct(args.kind, params, args.frame, args.seed, style)
            if args.out:
                _write_out(args.out, report["cap_file"])
            print(json.dumps(report, sort_keys=True, indent=2))
            return code
        if args.command == "spectrum":
            params = _kv_params(args.params)
            report, code, sp = cmd_spectrum(params, style)
            if args.out:
                os.makedirs(args.out, exist_ok=True)
                for size, witness in sp.witnesses.items():
                    _write_out(
                        os.path.join(args.out, f"cap_{size}.cap"),
                        format_cap_text(witness, {"size": str(size)}, style),
                    )
            print(json.dumps(report, sort_keys=True, indent=2))
            return code
        report, code = cmd_examples(style)
        print(json.dumps(report, sort_keys=True, indent=2))
        return code
    except ScaleRefusal as exc:
        print(f"pg2caps: scale refused: {exc}", file=sys.stderr)
        return 3
    except (CapFileError, PointParseError, FrameError, ConstructionError, ValueError) as exc:
        print(f"pg2caps: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
