"""Command-line front end.

Subcommands: check, pell, disc, orbit, enumerate. Input is a JSON
document with integer entries only; unknown fields are rejected. Exit
codes for `check`: 0 pass, 1 fail, 2 unknown, 3 input/usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import __version__
from .certificate import (
    CertificateInput,
    check_S1_lattice,
    check_S2_no_0_minus2,
    check_S3_polarization,
    check_S4_low_degree,
    check_S5_isometry,
    CITED_STEPS,
)
from .discgroup import discriminant_group
from .isometry import char_poly_rank2, polarization_orbit
from .lattice import GramLattice, determinant, signature
from .matrices import from_rows
from .oracle import (
    DEFAULT_BOX_RADIUS,
    brute_action_order,
    brute_low_degree,
    brute_pell,
    brute_values,
)
from .quadform import pell_fundamental

FORMAT_VERSION = "1"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 3

_DOCUMENT_FIELDS = {
    "gram",
    "polarization",
    "isometry",
    "degree_bound",
    "search_bound",
    "box_radius",
}


class DocumentError(ValueError):
    pass


def load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read input document: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON in input document: {exc}") from exc
    if not isinstance(raw, dict):
        raise DocumentError("input document must be a JSON object")
    unknown = set(raw) - _DOCUMENT_FIELDS
    if unknown:
        raise DocumentError(
            f"unknown field(s) in input document: {', '.join(sorted(unknown))}"
        )
    if "gram" not in raw:
        raise DocumentError("missing required field: gram")
    if "polarization" not in raw:
        raise DocumentError("missing required field: polarization")
    _require_int_matrix(raw["gram"], "gram")
    _require_int_vector(raw["polarization"], "polarization")
    if raw.get("isometry") is not None:
        _require_int_matrix(raw["isometry"], "isometry")
    for key in ("degree_bound", "search_bound", "box_radius"):
        if key in raw and (not isinstance(raw[key], int) or raw[key] < 1):
            raise DocumentError(f"field {key} must be a positive integer")
    return raw


def _require_int_matrix(value, name: str) -> None:
    if (
        not isinstance(value, list)
        or not value
        or not all(
            isinstance(row, list)
            and all(isinstance(x, int) and not isinstance(x, bool) for x in row)
            for row in value
        )
    ):
        raise DocumentError(f"field {name} must be a 2D integer array")


def _require_int_vector(value, name: str) -> None:
    if (
        not isinstance(value, list)
        or not value
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in value)
    ):
        raise DocumentError(f"field {name} must be an integer array")


def _build_input(doc: dict, degree_bound: Optional[int]) -> CertificateInput:
    gram = GramLattice.from_rows(doc["gram"])
    isom = from_rows(doc["isometry"]) if doc.get("isometry") else None
    return CertificateInput(
        gram=gram,
        polarization=tuple(doc["polarization"]),
        isometry=isom,
        degree_bound=degree_bound or doc.get("degree_bound", 16),
        search_bound=doc.get("search_bound", 1000),
    )


def _derived_block(inp: CertificateInput, steps: list) -> dict:
    g = inp.gram
    sig = signature(g)
    derived = {
        "det": determinant(g),
        "signature": [sig.positive, sig.negative],
        "invariant_factors": list(discriminant_group(g).invariant_factors),
        "disc_action_order": None,
        "char_poly": None,
        "dominant_root": None,
    }
    for s in steps:
        if s["id"] == "S5" and s["details"]:
            derived["disc_action_order"] = s["details"].get("disc_action_order")
            derived["char_poly"] = s["details"].get("char_poly")
            derived["dominant_root"] = s["details"].get("dominant_root")
    return derived


def _run_check(inp: CertificateInput, verify: bool, box_radius: int) -> dict:
    steps = []
    timing = {}
    blocked = False
    checks = (
        ("S1", lambda: check_S1_lattice(inp.gram)),
        ("S2", lambda: check_S2_no_0_minus2(inp.gram, inp.search_bound)),
        ("S3", lambda: check_S3_polarization(inp.gram, inp.polarization)),
        (
            "S4",
            lambda: check_S4_low_degree(
                inp.gram, inp.polarization, inp.degree_bound
            ),
        ),
        (
            "S5",
            lambda: check_S5_isometry(
                inp.gram, inp.polarization, inp.isometry
            ),
        ),
    )
    for step_id, check in checks:
        if blocked:
            steps.append(
                {
                    "id": step_id,
                    "status": "skipped",
                    "witness": None,
                    "citation": "",
                    "details": {},
                }
            )
            continue
        start = time.perf_counter()
        result = check()
        timing[step_id] = round((time.perf_counter() - start) * 1000, 3)
        steps.append(
            {
                "id": result.id,
                "status": result.status,
                "witness": result.witness,
                "citation": result.citation,
                "details": result.details,
            }
        )
        if result.status != "pass":
            blocked = True
    statuses = {s["status"] for s in steps}
    if statuses == {"pass"}:
        verdict = "pass"
    elif "fail" in statuses:
        verdict = "fail"
    else:
        verdict = "unknown"
    doc = {
        "format_version": FORMAT_VERSION,
        "verdict": verdict,
        "steps": steps,
        "derived": _derived_block(inp, steps),
        "notes": list(CITED_STEPS),
        "timing": timing,
    }
    if verify:
        doc["verify"] = _run_verify(inp, steps, box_radius)
        if any(v["status"] == "mismatch" for v in doc["verify"].values()):
            doc["verdict"] = "fail"
    return doc


def _run_verify(inp: CertificateInput, steps: list, box_radius: int) -> dict:
    """Cross-check the pipeline against the brute-force oracles."""
    g = inp.gram
    out = {}
    by_id = {s["id"]: s for s in steps}

    if g.rank == 2:
        values = brute_values(g, box_radius)
        oracle_hits = {t: values[t] for t in (0, -2) if t in values}
        s2 = by_id["S2"]["status"]
        agree = (s2 == "pass") == (not oracle_hits) or s2 in (
            "skipped",
            "unknown",
        ) and not oracle_hits or s2 == "fail" and bool(oracle_hits)
        out["values_box_scan"] = {
            "status": "agree" if agree else "mismatch",
            "box_radius": box_radius,
            "witnesses": {str(t): list(v) for t, v in oracle_hits.items()},
        }

    s4 = by_id["S4"]
    if s4["status"] in ("pass", "fail"):
        oracle_classes = brute_low_degree(
            g, tuple(inp.polarization), inp.degree_bound
        )
        pipeline = {
            tuple(c["coords"]) for c in s4["details"].get("classes", [])
        }
        oracle_set = {c.coords for c in oracle_classes}
        out["low_degree_enumeration"] = {
            "status": "agree" if pipeline == oracle_set else "mismatch",
            "count": len(oracle_set),
        }

    s5 = by_id["S5"]
    if s5["status"] == "pass" and s5["details"].get("isometry"):
        m = from_rows(s5["details"]["isometry"])
        n_oracle = brute_action_order(g, m)
        n_pipeline = s5["details"].get("disc_action_order")
        out["disc_action_order"] = {
            "status": "agree" if n_oracle == n_pipeline else "mismatch",
            "oracle": n_oracle,
            "pipeline": n_pipeline,
        }
    return out


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
        return
    print(f"verdict: {doc['verdict']}")
    for s in doc["steps"]:
        line = f"  {s['id']}: {s['status']}"
        if s["witness"] is not None:
            line += f"  witness={s['witness']}"
        print(line)
    derived = doc["derived"]
    print(f"  det={derived['det']} signature={derived['signature']}")
    print(f"  invariant_factors={derived['invariant_factors']}")
    if derived["disc_action_order"] is not None:
        print(f"  disc_action_order={derived['disc_action_order']}")
    if derived["dominant_root"]:
        print(f"  dominant_root={derived['dominant_root']}")
    if "verify" in doc:
        for name, v in doc["verify"].items():
            print(f"  verify {name}: {v['status']}")
    for step_id, ms in doc["timing"].items():
        print(f"  timing {step_id}: {ms} ms")


def cmd_check(args) -> int:
    doc = load_document(args.path)
    inp = _build_input(doc, args.degree_bound)
    box_radius = doc.get("box_radius", DEFAULT_BOX_RADIUS)
    report = _run_check(inp, args.verify, box_radius)
    _emit(report, args.format)
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "unknown": EXIT_UNKNOWN}[
        report["verdict"]
    ]


def cmd_pell(args) -> int:
    sol = pell_fundamental(args.d)
    if args.format == "json":
        print(json.dumps({"D": sol.D, "x": sol.x, "y": sol.y}, sort_keys=True))
    else:
        print(f"({sol.x}, {sol.y})")
    return EXIT_PASS


def cmd_disc(args) -> int:
    doc = load_document(args.path)
    g = GramLattice.from_rows(doc["gram"])
    group = discriminant_group(g)
    gens = [[str(x) for x in w] for w in group.generators]
    if args.format == "json":
        print(
            json.dumps(
                {
                    "invariant_factors": list(group.invariant_factors),
                    "order": group.order,
                    "generators": gens,
                },
                sort_keys=True,
            )
        )
    else:
        print(f"invariant factors: {list(group.invariant_factors)}")
        print(f"order: {group.order}")
        for f, w in zip(group.invariant_factors, gens):
            print(f"  Z/{f} generated by ({', '.join(w)})")
    return EXIT_PASS


def cmd_orbit(args) -> int:
    doc = load_document(args.path)
    g = GramLattice.from_rows(doc["gram"])
    if not doc.get("isometry"):
        raise DocumentError("orbit requires an isometry in the document")
    m = from_rows(doc["isometry"])
    h = tuple(doc["polarization"])
    orbit = polarization_orbit(g, m, h, args.k_max)
    char = char_poly_rank2(m)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "orbit": [
                        {"k": k, "coords": list(v), "degree": d}
                        for k, v, d in orbit
                    ],
                    "char_poly": {"trace": char.trace, "det": char.det},
                    "dominant_root": (
                        str(char.dominant_root) if char.dominant_root else None
                    ),
                },
                sort_keys=True,
            )
        )
    else:
        for k, v, d in orbit:
            print(f"k={k}: {v} degree={d}")
        print(f"char poly: trace={char.trace} det={char.det}")
        if char.dominant_root:
            print(f"dominant root: {char.dominant_root}")
    return EXIT_PASS


def cmd_enumerate(args) -> int:
    doc = load_document(args.path)
    g = GramLattice.from_rows(doc["gram"])
    h = tuple(doc["polarization"])
    bound = args.bound or doc.get("degree_bound", 16)
    classes = brute_low_degree(g, h, bound)
    if args.format == "json":
        print(
            json.dumps(
                [
                    {
                        "coords": list(c.coords),
                        "degree": c.degree,
                        "square": c.square,
                        "multiple_of_h": c.multiple_of_h,
                    }
                    for c in classes
                ],
                sort_keys=True,
            )
        )
    else:
        for c in classes:
            tail = (
                f" = {c.multiple_of_h}*h"
                if c.multiple_of_h is not None
                else " (not a multiple of h)"
            )
            print(f"{c.coords} degree={c.degree} square={c.square}{tail}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latcert",
        description="Lattice-side certificate checker for quartic K3 "
        "automorphisms that extend to no Cremona transformation.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run the full certificate")
    p_check.add_argument("path", help="input JSON document")
    p_check.add_argument("--verify", action="store_true")
    p_check.add_argument("--format", choices=("json", "text"), default="text")
    p_check.add_argument("--degree-bound", dest="degree_bound", type=int)
    p_check.set_defaults(func=cmd_check)

    p_pell = sub.add_parser("pell", help="fundamental Pell solution")
    p_pell.add_argument("d", type=int)
    p_pell.add_argument("--format", choices=("json", "text"), default="text")
    p_pell.set_defaults(func=cmd_pell)

    p_disc = sub.add_parser("disc", help="discriminant group")
    p_disc.add_argument("path")
    p_disc.add_argument("--format", choices=("json", "text"), default="text")
    p_disc.set_defaults(func=cmd_disc)

    p_orbit = sub.add_parser("orbit", help="polarization orbit")
    p_orbit.add_argument("path")
    p_orbit.add_argument("--k-max", dest="k_max", type=int, default=5)
    p_orbit.add_argument("--format", choices=("json", "text"), default="text")
    p_orbit.set_defaults(func=cmd_orbit)

    p_enum = sub.add_parser("enumerate", help="low-degree class scan")
    p_enum.add_argument("path")
    p_enum.add_argument("--bound", type=int)
    p_enum.add_argument("--format", choices=("json", "text"), default="text")
    p_enum.set_defaults(func=cmd_enumerate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
