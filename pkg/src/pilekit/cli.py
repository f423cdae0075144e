"""Command line front end.

Every subcommand reads JSON (a file path or an inline document), prints one
JSON document on stdout, and exits with

    0 ok, 2 invalid input, 3 unsolvable, 4 profile mismatch,
    5 internal invariant violation (including a failing verification suite).

Errors are printed on stderr as ``{"error": ..., "message": ...}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import batteries
from . import serialize as sz
from .catalog import UnknownCatalog, catalog
from .embedding import (PairSolution, PileSolution, descend_solution, solve_basic_pile_ep,
                        solve_pair_ep, solve_pile_ep_bruteforce, quotient_ep_transfer)
from .errors import InvariantViolation, PileKitError
from .groups import FiniteGroup, GroupHom
from .gset import Partition
from .pile import (Pile, PileMorphism, check_epi, check_rigid, connect, decompose, fiber_product,
                   quotient_pile, standard_extension)
from .presentations import (HomCountProfile, Presentation, build_hnn, build_hnn_prime,
                            build_hnn_prime_on_points, build_phnn, hom_count, hom_profile,
                            mod_l_quotient, quotient_by_closure)

OK, INVALID, UNSOLVABLE, MISMATCH, VIOLATION = 0, 2, 3, 4, 5


class Workspace:
    """Loads named objects for one invocation; repeated references to the
    same source resolve to the same object."""

    def __init__(self, prime: int = 2, catalog_name: str = "p3"):
        if prime < 2 or any(prime % d == 0 for d in range(2, int(prime ** 0.5) + 1)):
            raise UnknownCatalog(f"{prime} is not prime")
        self.prime = prime
        self.catalog_name = catalog_name
        self._cache: dict[tuple[str, str], object] = {}

    def _load(self, kind: str, source: str, build):
        key = (kind, source)
        if key not in self._cache:
            self._cache[key] = build(self.raw(source))
        return self._cache[key]

    @staticmethod
    def raw(source: str):
        # bare catalog names such as C2 or D8 are accepted where a group is expected
        try:
            return sz.read_json(source)
        except sz.InvalidInput:
            text = source.strip()
            if Path(text).exists() or text.startswith(("{", "[", '"')):
                raise
            if text.endswith(".json"):
                raise sz.InvalidInput(f"no such file {text!r}") from None
            return text

    def group(self, source: str) -> FiniteGroup:
        return self._load("group", source, lambda o: sz.group_from_json(o, self.prime))

    def pile(self, source: str) -> Pile:
        def build(o):
            return sz.pile_from_json(o["pile"] if isinstance(o, dict) and "pile" in o else o, self.prime)
        return self._load("pile", source, build)

    def morphism(self, source: str, src: Pile | None = None, dst: Pile | None = None) -> PileMorphism:
        return sz.morphism_from_json(self.raw(source), src, dst, self.prime)

    def presentation(self, source: str) -> Presentation:
        def build(o):
            return sz.presentation_from_json(o["presentation"] if "presentation" in o else o, self.prime)
        return self._load("presentation", source, build)

    def rho(self, source: str, g: FiniteGroup, target: FiniteGroup | None) -> GroupHom:
        """``id`` (identity into G), or a list of images into ``target``."""
        if source == "id":
            return GroupHom.identity(g)
        if target is None:
            raise sz.InvalidInput("--L is required unless --rho is 'id'")
        return sz.hom_from_json(g, target, self.raw(source))

    def catalog(self):
        return catalog(self.catalog_name, self.prime)


class Done(Exception):
    """Carries the output document and exit code out of a handler."""

    def __init__(self, doc: dict, code: int = OK):
        super().__init__(code)
        self.doc, self.code = doc, code


# pile


def _pile_pair(ws: Workspace, args):
    src = ws.pile(args.source) if args.source else None
    dst = ws.pile(args.target) if args.target else None
    return src, dst


def cmd_check_morphism(ws: Workspace, args) -> dict:
    m = ws.morphism(args.morphism, *_pile_pair(ws, args))
    return {"valid": True, "morphism": sz.morphism_to_json(m)}


def cmd_check_epi(ws: Workspace, args) -> dict:
    c = check_epi(ws.morphism(args.morphism, *_pile_pair(ws, args)))
    return {"epimorphism": True, "witnesses": list(c.witnesses)}


def cmd_check_rigid(ws: Workspace, args) -> dict:
    c = check_rigid(check_epi(ws.morphism(args.morphism, *_pile_pair(ws, args))))
    return {"rigid": True, "witnesses": list(c.epi.witnesses), "orbit_bijection": list(c.orbit_bijection)}


def cmd_standard_ext(ws: Workspace, args) -> dict:
    g = ws.group(args.group)
    reps = ws.raw(args.subgroups)
    if not isinstance(reps, list) or any(not isinstance(r, list) or len(r) != 2 for r in reps):
        raise sz.InvalidInput('subgroups must be a list of ["label", [elements]] pairs')
    pile, base = standard_extension(g, [(label, sz.subgroup_from_json(g, s)) for label, s in reps])
    return {**sz.pile_to_json(pile), "base_points": list(base),
            "labels": [str(label) for label, _ in reps]}


def cmd_quotient(ws: Workspace, args) -> dict:
    p = ws.pile(args.pile)
    qp, qm = quotient_pile(p, sz.subgroup_from_json(p.group, ws.raw(args.normal)))
    return {"pile": sz.pile_to_json(qp), "morphism": sz.morphism_to_json(qm)}


def cmd_fiber_product(ws: Workspace, args) -> dict:
    a = ws.pile(args.target) if args.target else None
    alpha = ws.morphism(args.alpha, None, a)
    phi0 = ws.morphism(args.phi0, None, alpha.target)
    fp = fiber_product(alpha, phi0)
    return {"pile": sz.pile_to_json(fp.pile), "pairs": [list(x) for x in fp.pairs],
            "point_pairs": [list(x) for x in fp.point_pairs],
            "to_first": sz.morphism_to_json(fp.to_first),
            "to_second": sz.morphism_to_json(fp.to_second)}


def cmd_connect(ws: Workspace, args) -> dict:
    phi = ws.morphism(args.phi)
    psi = ws.morphism(args.psi, phi.source)
    return {"alpha": sz.morphism_to_json(connect(phi, psi), with_piles=True)}


def cmd_decompose(ws: Workspace, args) -> dict:
    phi = ws.morphism(args.phi)
    g = phi.source
    n0 = sz.subgroup_from_json(g.group, ws.raw(args.normal)) if args.normal else g.group.whole
    x = (sz.partition_from_json(g.space, ws.raw(args.partition)) if args.partition
         else Partition.single_block(g.space))
    d = decompose(phi, n0, x)
    return {"pile": sz.pile_to_json(d.pile), "kernel": list(d.kernel.elements),
            "psi": sz.morphism_to_json(d.psi), "alpha": sz.morphism_to_json(d.alpha)}


# embedding problems


def cmd_solve_pair(ws: Workspace, args) -> dict:
    ep = sz.pair_ep_from_json(ws.raw(args.problem), ws.prime)
    res = solve_pair_ep(ep)
    if isinstance(res, PairSolution):
        return {"solved": True, "gamma": list(res.gamma.map), "candidates": res.candidates}
    raise Done({"solved": False, "candidates": res.candidates, "reason": res.reason}, UNSOLVABLE)


def cmd_solve_pile(ws: Workspace, args) -> dict:
    ep = sz.pile_ep_from_json(ws.raw(args.problem), ws.prime)
    res = solve_pile_ep_bruteforce(ep)
    if isinstance(res, PileSolution):
        return {"solved": True, "gamma": sz.morphism_to_json(res.gamma), "candidates": res.candidates}
    raise Done({"solved": False, "candidates": res.candidates, "reason": res.reason}, UNSOLVABLE)


def cmd_solve_basic(ws: Workspace, args) -> dict:
    g, phi, alpha = sz.basic_ep_from_json(ws.raw(args.problem), ws.prime)
    return {"solved": True, "gamma": sz.basic_data_to_json(solve_basic_pile_ep(g, phi, alpha))}


def cmd_transfer_quotient(ws: Workspace, args) -> dict:
    ep = sz.pile_ep_from_json(ws.raw(args.problem), ws.prime)
    n = sz.subgroup_from_json(ep.phi.source.group, ws.raw(args.normal))
    tr = quotient_ep_transfer(ep, n)
    doc = {"tilde": list(tr.tilde.elements), "quotient": sz.morphism_to_json(tr.quotient, with_piles=True),
           "problem": sz.pile_ep_to_json(tr.problem)}
    res = solve_pile_ep_bruteforce(tr.problem)
    if not isinstance(res, PileSolution):
        raise Done({**doc, "solved": False, "candidates": res.candidates}, UNSOLVABLE)
    lifted = res.gamma.compose(tr.quotient)
    descend_solution(tr, lifted)
    return {**doc, "solved": True, "gamma_quotient": sz.morphism_to_json(res.gamma),
            "gamma": sz.morphism_to_json(lifted)}


# presentations


def _stable_hom(base: FiniteGroup, sub, images) -> GroupHom:
    """``images`` lists phi either on all of the base or on the sorted subgroup."""
    if len(images) == base.order:
        return sz.hom_from_json(base, base, images)
    grp, emb = sub.as_group()
    if len(images) != len(emb):
        raise sz.InvalidInput(f"phi needs {len(emb)} or {base.order} images, got {len(images)}")
    return GroupHom(grp, base, images)


def cmd_build_hnn(ws: Workspace, args) -> dict:
    g = ws.group(args.group)
    stable = []
    for entry in ws.raw(args.stable):
        if not isinstance(entry, list) or len(entry) != 3:
            raise sz.InvalidInput('stable letters are ["label", [subgroup], [phi images]]')
        label, elems, images = entry
        sub = sz.subgroup_from_json(g, elems)
        stable.append((label, sub, _stable_hom(g, sub, images)))
    return sz.presentation_to_json(build_hnn(g, stable))


def cmd_build_hnn_prime(ws: Workspace, args) -> dict:
    L = ws.group(args.L) if args.L else None
    if args.pile:
        p = ws.pile(args.pile)
        rho = ws.rho(args.rho, p.group, L)
        points = ws.raw(args.points) if args.points else [orb[0] for orb in p.orbits]
        return sz.presentation_to_json(build_hnn_prime_on_points(p, points, rho))
    if not args.group or not args.stable:
        raise sz.InvalidInput("give either --pile or --group with --stable")
    g = ws.group(args.group)
    rho = ws.rho(args.rho, g, L)
    stable = [(label, sz.subgroup_from_json(g, elems)) for label, elems in ws.raw(args.stable)]
    return sz.presentation_to_json(build_hnn_prime(g, stable, rho, rho.target))


def cmd_build_phnn(ws: Workspace, args) -> dict:
    p = ws.pile(args.pile)
    rho = ws.rho(args.rho, p.group, ws.group(args.L) if args.L else None)
    return sz.presentation_to_json(build_phnn(p, rho))


def cmd_pres_quotient(ws: Workspace, args) -> dict:
    p = ws.presentation(args.pres)
    words = [sz.word_from_json(w) for w in ws.raw(args.words)]
    return sz.presentation_to_json(quotient_by_closure(p, words))


def cmd_mod_l(ws: Workspace, args) -> dict:
    return sz.presentation_to_json(mod_l_quotient(ws.presentation(args.pres), args.l_factor))


def cmd_hom_count(ws: Workspace, args) -> dict:
    return {"count": hom_count(ws.presentation(args.pres), ws.group(args.target))}


def _profile_json(prof: HomCountProfile) -> list[dict]:
    return [{"group": name, "count": c} for name, c in prof.entries]


def cmd_hom_profile(ws: Workspace, args) -> dict:
    prof = hom_profile(ws.presentation(args.pres), ws.catalog())
    return {"catalog": ws.catalog_name, "profile": _profile_json(prof)}


def _profile_of(ws: Workspace, source: str) -> HomCountProfile:
    """A presentation, or a profile document written by ``hom-profile``."""
    obj = ws.raw(source)
    if isinstance(obj, dict) and "profile" in obj:
        return HomCountProfile(tuple((e["group"], int(e["count"])) for e in obj["profile"]))
    return hom_profile(ws.presentation(source), ws.catalog())


def cmd_compare_profiles(ws: Workspace, args) -> dict:
    left, right = _profile_of(ws, args.left), _profile_of(ws, args.right)
    diff = left.first_difference(right)
    if diff is None:
        return {"equal": True, "catalog": ws.catalog_name, "profile": _profile_json(left)}
    name, a, b = diff
    raise Done({"equal": False, "catalog": ws.catalog_name,
                "first_difference": {"group": name, "left": a, "right": b}}, MISMATCH)


# verification


def cmd_verify(ws: Workspace, args) -> dict:
    scale = batteries.Scale(seed=args.seed, count=args.count, catalog=ws.catalog_name,
                            prime=ws.prime, max_group=args.max_group, max_space=args.max_space)
    stamp = not args.no_timestamp
    if args.pile:
        p = ws.pile(args.pile)
        rho = ws.rho(args.rho or "id", p.group, ws.group(args.L) if args.L else None)
        points = ws.raw(args.points) if args.points else None
        report = batteries.run_instance_report(args.suite, p, rho, scale, points, stamp)
    else:
        report = batteries.run_suite(args.suite, scale, stamp)
    if report["status"] != "pass":
        raise Done(report, VIOLATION)
    return report


# argument parsing


def _common(defaults: bool) -> argparse.ArgumentParser:
    """Global flags; leaf parsers repeat them without defaults so they may
    appear before or after the subcommand."""
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=d(0), help="random seed (default 0)")
    p.add_argument("--catalog", choices=["p3", "p4"], default=d("p3"), help="group catalog")
    p.add_argument("--prime", type=int, default=d(2), help="the prime p (default 2)")
    p.add_argument("--out", default=d(None), metavar="FILE", help="also write the JSON here")
    p.add_argument("--no-timestamp", action="store_true", default=d(False),
                   help="omit wall times so reports are byte-identical")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pilekit", parents=[_common(True)],
                                     description="Finite piles, embedding problems and HNN presentations.")
    leaf = [_common(False)]
    top = parser.add_subparsers(dest="area", required=True)

    def add(sub, name, func, help_text, *args):
        p = sub.add_parser(name, parents=leaf, help=help_text)
        for flag, kw in args:
            p.add_argument(flag, **kw)
        p.set_defaults(func=func)
        return p

    req = {"required": True}
    pile = top.add_parser("pile", help="pile operations").add_subparsers(dest="cmd", required=True)
    pair_flags = (("--source", {"help": "source pile (if not inside the morphism)"}),
                  ("--target", {"help": "target pile (if not inside the morphism)"}))
    add(pile, "check-morphism", cmd_check_morphism, "validate a pile morphism",
        ("--morphism", req), *pair_flags)
    add(pile, "check-epi", cmd_check_epi, "epimorphism certificate", ("--morphism", req), *pair_flags)
    add(pile, "check-rigid", cmd_check_rigid, "rigid epimorphism certificate",
        ("--morphism", req), *pair_flags)
    add(pile, "standard-ext", cmd_standard_ext, "standard extension of labelled subgroups",
        ("--group", req), ("--subgroups", req))
    add(pile, "quotient", cmd_quotient, "quotient by a normal subgroup", ("--pile", req), ("--normal", req))
    add(pile, "fiber-product", cmd_fiber_product, "fiber product over a common target",
        ("--alpha", req), ("--phi0", req), ("--target", {"help": "common target pile"}))
    add(pile, "connect", cmd_connect, "the morphism alpha with alpha o psi = phi",
        ("--phi", req), ("--psi", req))
    add(pile, "decompose", cmd_decompose, "factor phi through a smaller pile",
        ("--phi", req), ("--normal", {"help": "normal subgroup bounding the kernel (default G)"}),
        ("--partition", {"help": "partition the fibers must refine (default one block)"}))

    ep = top.add_parser("ep", help="embedding problems").add_subparsers(dest="cmd", required=True)
    add(ep, "solve-pair", cmd_solve_pair, "group pair problem", ("--problem", req))
    add(ep, "solve-pile", cmd_solve_pile, "pile problem, exhaustive", ("--problem", req))
    add(ep, "solve-basic", cmd_solve_basic, "problem out of a basic pile", ("--problem", req))
    add(ep, "transfer-quotient", cmd_transfer_quotient, "move a problem to a quotient and solve it",
        ("--problem", req), ("--normal", req))

    pres = top.add_parser("pres", help="presentations").add_subparsers(dest="cmd", required=True)
    rho_flags = (("--rho", {"default": "id", "help": "'id' or a list of images in L"}),
                 ("--L", {"help": "target group of rho"}))
    add(pres, "build-hnn", cmd_build_hnn, "HNN-extension of a finite group",
        ("--group", req), ("--stable", req))
    add(pres, "build-hnn-prime", cmd_build_hnn_prime, "HNN'-extension into L",
        ("--pile", {}), ("--points", {"help": "stable letters (default first point of each orbit)"}),
        ("--group", {}), ("--stable", {"help": 'list of ["label", [subgroup]]'}), *rho_flags)
    add(pres, "build-phnn", cmd_build_phnn, "pile HNN-extension", ("--pile", req), *rho_flags)
    add(pres, "quotient", cmd_pres_quotient, "add relators", ("--pres", req), ("--words", req))
    add(pres, "mod-l", cmd_mod_l, "kill the factor L", ("--pres", req),
        ("--l-factor", {"type": int, "default": 1, "help": "index of L among the factors"}))
    add(pres, "hom-count", cmd_hom_count, "|Hom(P, Q)|", ("--pres", req), ("--target", req))
    add(pres, "hom-profile", cmd_hom_profile, "hom counts over the catalog", ("--pres", req))
    add(pres, "compare-profiles", cmd_compare_profiles, "exit 4 on the first differing entry",
        ("--left", req), ("--right", req))

    v = top.add_parser("verify", parents=leaf, help="run a verification suite")
    v.add_argument("suite")
    v.add_argument("--count", type=int, help="number of random instances")
    v.add_argument("--max-group", type=int, default=8)
    v.add_argument("--max-space", type=int)
    v.add_argument("--pile", help="run a pile suite on this single pile")
    v.add_argument("--rho", help="'id' or a list of images in L (with --pile)")
    v.add_argument("--L", help="target group of rho")
    v.add_argument("--points", help="stable letters for with-section and hnn-kernel")
    v.set_defaults(func=cmd_verify)
    return parser


def _emit(doc: dict, out: str | None, stream) -> None:
    text = json.dumps(doc, indent=2)
    print(text, file=stream)
    if out:
        Path(out).write_text(text + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    try:
        ws = Workspace(args.prime, args.catalog)
        doc, code = args.func(ws, args), OK
    except Done as d:
        doc, code = d.doc, d.code
    except PileKitError as exc:
        _emit(exc.to_json(), None, sys.stderr)
        return exc.exit_code
    except OSError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, None, sys.stderr)
        return INVALID
    except (KeyError, TypeError, IndexError) as exc:
        _emit({"error": "InvalidInput", "message": f"{type(exc).__name__}: {exc}"}, None, sys.stderr)
        return INVALID
    except Exception as exc:  # anything else is a bug
        err = InvariantViolation(f"{type(exc).__name__}: {exc}")
        _emit(err.to_json(), None, sys.stderr)
        return VIOLATION
    _emit(doc, args.out, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
