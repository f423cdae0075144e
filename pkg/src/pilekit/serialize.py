"""JSON formats for groups, G-sets, piles, morphisms, presentations and
embedding problem bundles.

Groups are either inline tables ``{"order", "mul", "labels"?}`` or a
catalog name (a bare string or ``{"name": ...}``). Element 0 is the
identity everywhere.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .catalog import by_name
from .embedding import BasicMorphismData, BasicPile, PairEmbeddingProblem, PileEmbeddingProblem
from .errors import PileKitError
from .groups import FiniteGroup, GroupHom, Subgroup, subgroup_generated, validate_group
from .gset import GSet, Partition
from .pile import Pile, PileMorphism, check_morphism
from .presentations import Letter, Presentation, fac, free


class InvalidInput(PileKitError):
    pass


def read_json(source: str | Path) -> Any:
    """Parse a file path, or an inline JSON document when it does not name a file."""
    text = str(source)
    path = Path(text)
    try:
        if not text.lstrip().startswith(("{", "[", '"')) and path.exists():
            return json.loads(path.read_text())
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON in {text[:60]!r}: {exc}") from exc


def _need(obj: dict, key: str, what: str):
    if not isinstance(obj, dict) or key not in obj:
        raise InvalidInput(f"{what} is missing the field {key!r}")
    return obj[key]


# groups


def group_to_json(g: FiniteGroup) -> dict:
    out: dict = {"order": g.order, "mul": [list(r) for r in g.mul]}
    if g.labels is not None:
        out["labels"] = list(g.labels)
    if g.name:
        out["name"] = g.name
    return out


def group_from_json(obj, prime: int = 2) -> FiniteGroup:
    if isinstance(obj, str):
        return by_name(obj, prime)
    if isinstance(obj, dict) and "mul" not in obj and "name" in obj:
        return by_name(obj["name"], prime)
    mul = _need(obj, "mul", "group")
    if not isinstance(mul, list) or any(not isinstance(r, list) or len(r) != len(mul) for r in mul):
        raise InvalidInput("group table must be a square list of lists")
    if "order" in obj and obj["order"] != len(mul):
        raise InvalidInput(f"order {obj['order']} does not match a table of size {len(mul)}")
    g = validate_group(mul, obj.get("labels"))
    g.name = obj.get("name")
    return g


def subgroup_from_json(g: FiniteGroup, obj) -> Subgroup:
    """A list of elements; the generated subgroup must equal the list."""
    if not isinstance(obj, list):
        raise InvalidInput("a subgroup is a list of element indices")
    s = subgroup_generated(g, obj)
    if set(obj) | {0} != s.members:
        raise InvalidInput(f"{sorted(obj)} is not closed under multiplication")
    return s


def hom_from_json(source: FiniteGroup, target: FiniteGroup, obj) -> GroupHom:
    if not isinstance(obj, list):
        raise InvalidInput("a homomorphism is a list of images")
    return GroupHom(source, target, obj)


# actions and piles


def gset_to_json(s: GSet, with_group: bool = True) -> dict:
    out: dict = {"size": s.size, "action": [list(r) for r in s.action]}
    if with_group:
        out = {"group": group_to_json(s.group), **out}
    return out


def gset_from_json(obj, group: FiniteGroup | None = None, prime: int = 2) -> GSet:
    if group is None:
        group = group_from_json(_need(obj, "group", "gset"), prime)
    action = _need(obj, "action", "gset")
    if "size" in obj and obj["size"] != len(action):
        raise InvalidInput(f"size {obj['size']} does not match {len(action)} action rows")
    return GSet(group, action)


def partition_to_json(p: Partition) -> dict:
    return {"blocks": [list(b) for b in p.blocks]}


def partition_from_json(s: GSet, obj) -> Partition:
    blocks = obj if isinstance(obj, list) else _need(obj, "blocks", "partition")
    return Partition(s, tuple(tuple(b) for b in blocks))


def pile_to_json(p: Pile) -> dict:
    return {"group": group_to_json(p.group), "space": gset_to_json(p.space, with_group=False)}


def pile_from_json(obj, prime: int = 2) -> Pile:
    g = group_from_json(_need(obj, "group", "pile"), prime)
    return Pile(g, gset_from_json(_need(obj, "space", "pile"), g, prime))


def morphism_to_json(m: PileMorphism, with_piles: bool = False) -> dict:
    out: dict = {"group_map": list(m.group_map.map), "space_map": list(m.space_map)}
    if with_piles:
        out["source"] = pile_to_json(m.source)
        out["target"] = pile_to_json(m.target)
    return out


def morphism_from_json(obj, source: Pile | None = None, target: Pile | None = None,
                       prime: int = 2) -> PileMorphism:
    if source is None:
        source = pile_from_json(_need(obj, "source", "morphism"), prime)
    if target is None:
        target = pile_from_json(_need(obj, "target", "morphism"), prime)
    return check_morphism(source, target, _need(obj, "group_map", "morphism"),
                          _need(obj, "space_map", "morphism"))


# presentations


def letter_to_json(l: Letter) -> dict:
    if l.kind == "factor":
        return {"factor": l.index, "elem": l.value}
    return {"free": l.index, "exp": l.value}


def letter_from_json(obj) -> Letter:
    if isinstance(obj, dict) and "factor" in obj:
        return fac(int(obj["factor"]), int(_need(obj, "elem", "factor letter")))
    if isinstance(obj, dict) and "free" in obj:
        return free(int(obj["free"]), int(obj.get("exp", 1)))
    raise InvalidInput(f"unrecognized letter {obj!r}")


def word_from_json(obj) -> tuple[Letter, ...]:
    if not isinstance(obj, list):
        raise InvalidInput("a word is a list of letters")
    return tuple(letter_from_json(l) for l in obj)


def presentation_to_json(p: Presentation) -> dict:
    return {
        "factors": [group_to_json(g) for g in p.factors],
        "free_letters": p.free_letters,
        "free_labels": list(p.free_labels),
        "relators": [[letter_to_json(l) for l in w] for w in p.relators],
    }


def presentation_from_json(obj, prime: int = 2) -> Presentation:
    factors = [group_from_json(g, prime) for g in obj.get("factors", [])]
    k = int(obj.get("free_letters", 0))
    rels = [word_from_json(w) for w in obj.get("relators", [])]
    return Presentation(tuple(factors), k, tuple(rels), obj.get("free_labels"))


# embedding problem bundles


def pile_ep_to_json(ep: PileEmbeddingProblem) -> dict:
    return {
        "source": pile_to_json(ep.phi.source),
        "target": pile_to_json(ep.phi.target),
        "cover": pile_to_json(ep.alpha.source),
        "phi": morphism_to_json(ep.phi),
        "alpha": morphism_to_json(ep.alpha),
    }


def pile_ep_from_json(obj, prime: int = 2) -> PileEmbeddingProblem:
    """``{"source": G, "cover": B, "target": A, "phi": G->A, "alpha": B->A}``"""
    g = pile_from_json(_need(obj, "source", "embedding problem"), prime)
    a = pile_from_json(_need(obj, "target", "embedding problem"), prime)
    b = pile_from_json(_need(obj, "cover", "embedding problem"), prime)
    phi = morphism_from_json(_need(obj, "phi", "embedding problem"), g, a)
    alpha = morphism_from_json(_need(obj, "alpha", "embedding problem"), b, a)
    return PileEmbeddingProblem(phi, alpha)


def pair_ep_from_json(obj, prime: int = 2) -> PairEmbeddingProblem:
    g = group_from_json(_need(obj, "group", "pair problem"), prime)
    a = group_from_json(_need(obj, "target_group", "pair problem"), prime)
    b = group_from_json(_need(obj, "cover_group", "pair problem"), prime)
    return PairEmbeddingProblem(
        g,
        tuple(subgroup_from_json(g, s) for s in obj.get("family", [])),
        hom_from_json(g, a, _need(obj, "phi", "pair problem")),
        hom_from_json(b, a, _need(obj, "alpha", "pair problem")),
        tuple(subgroup_from_json(b, s) for s in obj.get("family_b", [])),
        tuple(subgroup_from_json(a, s) for s in obj.get("family_a", [])),
    )


def pair_ep_to_json(ep: PairEmbeddingProblem) -> dict:
    return {
        "group": group_to_json(ep.group),
        "target_group": group_to_json(ep.phi.target),
        "cover_group": group_to_json(ep.alpha.source),
        "family": [list(s.elements) for s in ep.family],
        "phi": list(ep.phi.map),
        "alpha": list(ep.alpha.map),
        "family_b": [list(s.elements) for s in ep.family_b],
        "family_a": [list(s.elements) for s in ep.family_a],
    }


def basic_data_to_json(d: BasicMorphismData) -> dict:
    return {"factor_homs": [list(h.map) for h in d.factor_homs],
            "free_images": list(d.free_images), "label_points": list(d.label_points)}


def basic_ep_to_json(g: BasicPile, phi: BasicMorphismData, alpha: PileMorphism) -> dict:
    return {
        "factors": [{"label": l, "group": group_to_json(f)} for l, f in g.factors],
        "free_rank": g.free_rank,
        "target": pile_to_json(alpha.target),
        "cover": pile_to_json(alpha.source),
        "alpha": morphism_to_json(alpha),
        "phi": basic_data_to_json(phi),
    }


def basic_ep_from_json(obj, prime: int = 2) -> tuple[BasicPile, BasicMorphismData, PileMorphism]:
    factors = [(f.get("label", str(i)), group_from_json(_need(f, "group", "factor"), prime))
               for i, f in enumerate(obj.get("factors", []))]
    g = BasicPile(tuple(factors), int(obj.get("free_rank", 0)), obj.get("prime"))
    a = pile_from_json(_need(obj, "target", "basic problem"), prime)
    b = pile_from_json(_need(obj, "cover", "basic problem"), prime)
    alpha = morphism_from_json(_need(obj, "alpha", "basic problem"), b, a)
    raw = _need(obj, "phi", "basic problem")
    homs = _need(raw, "factor_homs", "phi")
    if len(homs) != len(factors):
        raise InvalidInput("one factor hom per factor is required")
    data = BasicMorphismData(
        tuple(hom_from_json(f, a.group, h) for (_, f), h in zip(factors, homs)),
        tuple(int(v) for v in raw.get("free_images", [])),
        tuple(int(v) for v in _need(raw, "label_points", "phi")))
    return g, data, alpha
