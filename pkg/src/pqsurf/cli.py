"""Command-line interface: ``pqsurf <command> JOB.json``.

Job files are JSON documents with ``"schema": 1``.  See the README for the
full format.  Reports are JSON on stdout (or ``--out``); logs go to stderr.
Exit codes: 0 success, 1 invalid input, 2 resource cap hit, 3 inconsistency.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from . import __version__
from .covers import (SphericalSystem, automorphism_orbits, enumerate_systems,
                     enumerate_systems_by_orders, genus_of_cover, induced_quotient_monodromy,
                     validate_system)
from .errors import InconsistencyError, PQSurfError, ResourceCapError, ValidationError
from .fundgroup import pi1_trivial_certificate
from .invariants import GENERAL_TYPE_CAVEAT, surface_from_subgroup, surface_from_systems, twist_report
from .lattice import identify, subgroup_classes
from .permgroup import FiniteGroup, Permutation, group_from_generators, subgroup_generated
from .psl2 import ProjectiveSpecialLinearGroup, psl2_group
from .singularities import basket_from_elements, basket_invariants

SCHEMA = 1
log = logging.getLogger("pqsurf")


# -- job files -----------------------------------------------------------------

@dataclass
class Job:
    name: str
    group: FiniteGroup
    raw: dict
    subgroup: Any = None
    subgroup_label: str | None = None
    systems: list[SphericalSystem] = field(default_factory=list)
    enumerate_orders: list[int] | None = None
    automorphisms: list[Permutation] = field(default_factory=list)
    options: dict = field(default_factory=dict)

    def option(self, key, default):
        return self.options.get(key, default)


def _parse_group(desc: dict) -> FiniteGroup:
    kind = desc.get("kind")
    if kind == "psl2":
        return psl2_group(int(desc["q"]))
    if kind == "perms":
        degree = int(desc["degree"])
        gens = [_parse_perm(g, degree) for g in desc["generators"]]
        return group_from_generators(degree, gens)
    raise ValidationError(f"unknown group kind {kind!r}")


def _parse_perm(desc, degree: int) -> Permutation:
    if isinstance(desc, dict) and "cycles" in desc:
        return Permutation.from_cycles(degree, *desc["cycles"])
    if not isinstance(desc, list) or len(desc) != degree:
        raise ValidationError(f"expected {degree} images, got {desc!r}")
    return Permutation(desc)


def _parse_element(G: FiniteGroup, desc) -> int:
    if isinstance(desc, dict) and "word" in desc:
        gens = G.generator_indices
        x = 0
        for letter in desc["word"]:
            k = abs(int(letter))
            if not 1 <= k <= len(gens):
                raise ValidationError(f"word letter {letter} out of range")
            g = gens[k - 1]
            x = G.mul(x, g if letter > 0 else G.inv(g))
        return x
    if isinstance(G, ProjectiveSpecialLinearGroup) and not (isinstance(desc, dict) and "cycles" in desc):
        if (not isinstance(desc, list) or len(desc) != 2
                or any(not isinstance(r, list) or len(r) != 2 for r in desc)):
            raise ValidationError(f"expected a 2x2 matrix, got {desc!r}")
        return G.idx(G.from_matrix(desc))
    return G.idx(_parse_perm(desc, G.degree))


def parse_job(data: dict, name: str = "job") -> Job:
    if not isinstance(data, dict):
        raise ValidationError("job file must contain a JSON object")
    if data.get("schema") != SCHEMA:
        raise ValidationError(f"unsupported schema {data.get('schema')!r}, expected {SCHEMA}")
    if "group" not in data:
        raise ValidationError("job has no group descriptor")
    try:
        G = _parse_group(data["group"])
        job = Job(data.get("name", name), G, data, options=dict(data.get("options", {})))
        if "subgroup" in data:
            sub = data["subgroup"]
            gens = [_parse_element(G, g) for g in sub["generators"]]
            job.subgroup = subgroup_generated(G, gens)
            job.subgroup_label = sub.get("label") or identify(job.subgroup)
        for k, s in enumerate(data.get("systems", [])):
            try:
                job.systems.append(validate_system(G, [_parse_element(G, g) for g in s]))
            except ValidationError as exc:
                raise ValidationError(f"system {k}: {exc}") from None
        if "enumerate" in data:
            job.enumerate_orders = [int(m) for m in data["enumerate"]["orders"]]
        for m in data.get("automorphisms", []):
            if not isinstance(G, ProjectiveSpecialLinearGroup):
                raise ValidationError("automorphisms are supported for psl2 groups only")
            job.automorphisms.append(G.pgl_element(m))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed job: {exc!r}") from None
    return job


def load_job(path: str | Path) -> Job:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from None
    return parse_job(data, path.stem)


# -- rendering -------------------------------------------------------------------

def rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def element_repr(G: FiniteGroup, g: int):
    if isinstance(G, ProjectiveSpecialLinearGroup):
        return [list(r) for r in G.to_matrix(g)]
    return list(G.elements[g].images)


def _require_systems(job: Job, n: int = 1):
    if len(job.systems) < n:
        raise ValidationError(f"job needs at least {n} system(s), has {len(job.systems)}")


def _require_subgroup(job: Job):
    if job.subgroup is None:
        raise ValidationError("job has no subgroup")


def _pair(job: Job):
    _require_systems(job)
    return job.systems[0], job.systems[1] if len(job.systems) > 1 else job.systems[0]


def _map(fn, items, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# -- commands ----------------------------------------------------------------------

def cmd_group(job: Job, args) -> dict:
    G = job.group
    hist: dict[int, int] = {}
    for c in G.classes:
        hist[c.order] = hist.get(c.order, 0) + c.size
    return {
        "order": G.order,
        "degree": G.degree,
        "classes": [{"index": k, "order": c.order, "size": c.size, "rep": element_repr(G, c.rep)}
                    for k, c in enumerate(G.classes)],
        "order_histogram": {str(m): n for m, n in sorted(hist.items())},
    }


def cmd_subgroups(job: Job, args) -> dict:
    G = job.group
    system = job.systems[0] if job.systems else None
    rows = []
    for c in subgroup_classes(G):
        row = {"label": c.label, "order": c.order, "index": G.order // c.order,
               "conjugates": c.conjugates,
               "generators": [element_repr(G, G.idx(g)) for g in c.rep.generators]}
        if system is not None:
            row["quotient_genus"] = induced_quotient_monodromy(system, c.rep).quotient_genus
        rows.append(row)
    return {"classes": len(rows), "subgroups": rows}


def _system_summary(sys: SphericalSystem) -> dict:
    return {"signature": list(sys.signature), "genus": genus_of_cover(sys),
            "classes": list(sys.classes)}


def cmd_cover(job: Job, args) -> dict:
    _require_systems(job)
    out = {"systems": [_system_summary(s) for s in job.systems]}
    if job.enumerate_orders:
        found = enumerate_systems_by_orders(job.group, job.enumerate_orders)
        out["enumerated"] = {"orders": job.enumerate_orders, "count": len(found)}
        if job.automorphisms:
            phis = [_conjugation(x) for x in job.automorphisms]
            out["enumerated"]["automorphism_orbits"] = automorphism_orbits(found, phis)
    return out


def _conjugation(x: Permutation):
    xi = x.inverse()
    return lambda g: x * g * xi


def _quotient(sys: SphericalSystem, H) -> dict:
    cov = induced_quotient_monodromy(sys, H)
    return {
        "index": sys.group.order // H.order,
        "total_genus": cov.total_genus,
        "quotient_genus": cov.quotient_genus,
        "branch_points": len(cov.branch_classes),
        "branch_data": [{"class": b.class_index, "order": b.order,
                         "class_size": H.classes[b.class_index].size, "count": b.count}
                        for b in cov.branch_data],
    }


def cmd_quotient(job: Job, args) -> dict:
    _require_systems(job)
    _require_subgroup(job)
    return {"subgroup": {"label": job.subgroup_label, "order": job.subgroup.order},
            "systems": [_quotient(s, job.subgroup) for s in job.systems]}


def cmd_basket(job: Job, args) -> dict:
    s1, s2 = _pair(job)
    if job.subgroup is not None:
        H = job.subgroup
        e1 = induced_quotient_monodromy(s1, H).class_reps()
        e2 = induced_quotient_monodromy(s2, H).class_reps()
        res = basket_from_elements(H, e1, e2)
    else:
        res = basket_from_elements(job.group, s1.elements, s2.elements)
    inv = basket_invariants(res.basket)
    return {"basket": res.basket.as_list(), "text": str(res.basket),
            "singular_points": res.singular_points, "smooth_orbits": res.smooth_orbits,
            "k": rational(inv.k), "e": rational(inv.e), "B": rational(inv.B), "D": rational(inv.D)}


def _pi1_systems(job: Job, sys: SphericalSystem) -> list[SphericalSystem]:
    if job.subgroup is None:
        return [sys]
    cov = induced_quotient_monodromy(sys, job.subgroup)
    return enumerate_systems(job.subgroup, cov.class_reps(),
                             node_cap=int(job.option("node_cap", 10**7)))


def _pi1_run(job: Job, systems: list[SphericalSystem], threads: int):
    bound = int(job.option("word_bound", 3))
    return _map(lambda s: pi1_trivial_certificate(s, word_bound=bound), systems, threads)


def cmd_surface(job: Job, args) -> dict:
    s1, s2 = _pair(job)
    if job.subgroup is not None:
        inv = surface_from_subgroup(s1, s2, job.subgroup)
        same = (sorted(induced_quotient_monodromy(s1, job.subgroup).branch_classes)
                == sorted(induced_quotient_monodromy(s2, job.subgroup).branch_classes))
    else:
        inv = surface_from_systems(s1, s2)
        same = sorted(s1.classes) == sorted(s2.classes)
    out = inv.to_dict()
    out["hodge_diamond"] = inv.diamond.rows()
    if args.no_pi1:
        out["pi1"] = "not checked"
    elif not same:
        out["pi1"] = "not applicable: the two covers have different branch data"
    else:
        systems = _pi1_systems(job, s1)
        results = _pi1_run(job, systems, args.threads)
        ok = sum(r.verified for r in results)
        out["pi1"] = (f"trivial: good presentation verified for all {ok} systems" if ok == len(results)
                      else f"inconclusive: {ok} of {len(results)} systems certified")
    return out


def cmd_pi1(job: Job, args) -> dict:
    _require_systems(job)
    systems = _pi1_systems(job, job.systems[0])
    results = _pi1_run(job, systems, args.threads)
    verified = sum(r.verified for r in results)
    statuses = {r.status for r in results}
    status = ("verified" if statuses == {"verified"}
              else "inconclusive" if "inconclusive" in statuses else "refuted-at-bound")
    out = {"systems": len(systems), "verified": verified, "status": status}
    shown = results if args.all else results[:1]
    out["witnesses"] = [r.witness.to_dict() if r.witness else None for r in shown]
    out["unverified_positions"] = [k for k, r in enumerate(results) if not r.verified]
    return out


def cmd_twists(job: Job, args) -> dict:
    if job.enumerate_orders:
        systems = enumerate_systems_by_orders(job.group, job.enumerate_orders)
    else:
        _require_systems(job)
        systems = job.systems
    rep = twist_report(systems, systems, job.subgroup, threads=args.threads)
    entries = [{"row": i, "col": j, "K2": x.KX2, "c2": x.c2, "pg": x.pg, "h11": x.h11,
                "KminusE2": x.KminusE2, "basket": str(x.basket)}
               for i, row in enumerate(rep.matrix) for j, x in enumerate(row)]
    return {
        "systems": len(systems),
        "entries": entries,
        "summary": {
            "min_KminusE2": rep.min_k_minus_e2,
            "all_positive": rep.all_positive,
            "constant": rep.constant,
            "distinct": [{"K2": n[0], "c2": n[1], "pg": n[2], "h11": n[3], "KminusE2": n[4],
                          "basket": str(b), "count": c} for n, b, c in rep.distinct()],
            "caveat": GENERAL_TYPE_CAVEAT,
        },
    }


COMMANDS = {
    "group": (cmd_group, "order, conjugacy classes and element-order histogram"),
    "subgroups": (cmd_subgroups, "subgroups generated by two elements, up to conjugacy"),
    "cover": (cmd_cover, "validate systems; genus and signature"),
    "quotient": (cmd_quotient, "induced branch data and genus of C/H"),
    "basket": (cmd_basket, "basket of singularities and its k, e, B, D"),
    "surface": (cmd_surface, "all invariants of the resolved surface"),
    "pi1": (cmd_pi1, "good-presentation certificate search"),
    "twists": (cmd_twists, "invariants over all ordered pairs of systems"),
}


def build_report(command: str, job: Job, args) -> dict:
    fn = COMMANDS[command][0]
    t = time.perf_counter()
    result = fn(job, args)
    log.info("%s on %s took %.2f s", command, job.name, time.perf_counter() - t)
    return {"schema": SCHEMA, "tool": f"pqsurf {__version__}", "command": command,
            "job": job.name, "input": job.raw, "result": result}


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


# -- bundled regression corpus ---------------------------------------------------------

def bundled_jobs() -> list[tuple[str, dict, dict]]:
    """``(name, job, expected report)`` for each bundled job."""
    root = resources.files("pqsurf") / "data"
    out = []
    for entry in sorted((root / "jobs").iterdir(), key=lambda p: p.name):
        if not entry.name.endswith(".json"):
            continue
        stem = entry.name[:-5]
        expected = root / "expected" / entry.name
        out.append((stem, json.loads(entry.read_text()), json.loads(expected.read_text())))
    return out


def verify_bundled(args) -> int:
    failures = 0
    for name, data, expected in bundled_jobs():
        job = parse_job(data, name)
        got = json.loads(dumps(build_report(expected["command"], job, args)))
        ok = got == expected
        failures += not ok
        print(f"{name:16s} {expected['command']:10s} {'ok' if ok else 'MISMATCH'}")
        if not ok:
            for key in sorted(set(got["result"]) | set(expected["result"])):
                if got["result"].get(key) != expected["result"].get(key):
                    print(f"    {key}: expected {expected['result'].get(key)!r}, "
                          f"got {got['result'].get(key)!r}")
    return 3 if failures else 0


# -- entry point -------------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pqsurf", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"pqsurf {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    for name, (_, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("job", type=Path, help="JSON job file")
        if name == "surface":
            sp.add_argument("--no-pi1", action="store_true", help="skip the certificate search")
        if name == "pi1":
            sp.add_argument("--all", action="store_true", help="print every witness")
    sub.add_parser("verify-paper", parents=[common],
                   help="run the bundled jobs and compare with the expected reports")
    return p


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s",
                        level=logging.INFO if args.verbose else logging.WARNING)
    if args.threads < 1:
        log.error("--threads must be at least 1")
        return 1
    if args.command == "verify-paper":
        args.no_pi1, args.all = False, False
        try:
            return verify_bundled(args)
        except PQSurfError as exc:
            log.error("%s", exc)
            return _exit_code(exc)
    try:
        job = load_job(args.job)
        text = dumps(build_report(args.command, job, args))
    except PQSurfError as exc:
        log.error("%s", exc)
        return _exit_code(exc)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _exit_code(exc: PQSurfError) -> int:
    if isinstance(exc, ResourceCapError):
        return 2
    if isinstance(exc, InconsistencyError):
        return 3
    if isinstance(exc, ValidationError):
        return 1
    return 3


if __name__ == "__main__":
    sys.exit(main())
