"""Instance files: a small JSON schema for posets and dissection instances.

Schema version 1.  A document either spells out the pieces explicitly:

    {
      "schema": 1,
      "P": {"labels": [...], "covers": [["a","b"], ...],
            "bottom": "a", "top": "z"},
      "Q": {...},                 # optional
      "green": ["a", ...],        # optional
      "maps": {"f": {"a": "qa", ...}, "i": {...}, "j": {...}}   # optional
    }

or names a Bruhat order by parameters:

    {"schema": 1, "bruhat": {"n": 4, "k": 1, "order": "single_step"}}

Labels must be unique; covers and maps refer to labels.  Exported
documents are byte-deterministic for a fixed input and library version.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bruhat import OrderKind, dissection_instance, enumerate_bruhat, to_poset
from .errors import ParameterError
from .posets import FiniteBoundedPoset, MonotoneMap, from_covers
from .subsets import GroundParams
from .suspension_check import DissectionInstance

__all__ = [
    "SCHEMA_VERSION",
    "LoadedInstance",
    "parse_instance_doc",
    "load_instance",
    "poset_to_doc",
    "poset_from_doc",
    "instance_to_doc",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class LoadedInstance:
    """Either Bruhat parameters or explicit poset material."""

    bruhat: tuple[GroundParams, OrderKind] | None = None
    p: FiniteBoundedPoset | None = None
    q: FiniteBoundedPoset | None = None
    green_labels: tuple[str, ...] | None = None
    map_tables: dict | None = None

    def resolve_poset(self, max_subsets: int | None = None) -> FiniteBoundedPoset:
        """The P poset, enumerating the Bruhat order when necessary."""
        if self.bruhat is not None:
            params, kind = self.bruhat
            return to_poset(enumerate_bruhat(params, kind=kind, max_subsets=max_subsets))
        assert self.p is not None
        return self.p

    def green_indices(self, p: FiniteBoundedPoset) -> frozenset[int] | None:
        if self.bruhat is not None:
            return None
        if self.green_labels is None:
            return None
        pos = {lbl: i for i, lbl in enumerate(p.labels)}
        out = set()
        for lbl in self.green_labels:
            if lbl not in pos:
                raise ParameterError(f"green label {lbl!r} is not an element")
            out.add(pos[lbl])
        return frozenset(out)

    def resolve_dissection(self, max_subsets: int | None = None) -> DissectionInstance:
        """Assemble a full dissection instance, or fail with ParameterError."""
        if self.bruhat is not None:
            params, kind = self.bruhat
            order = enumerate_bruhat(params, kind=kind, max_subsets=max_subsets)
            return dissection_instance(order)
        if self.p is None or self.q is None:
            raise ParameterError("instance needs both P and Q poset blocks")
        if self.green_labels is None:
            raise ParameterError("instance needs a green list")
        if not self.map_tables or set(self.map_tables) != {"f", "i", "j"}:
            raise ParameterError("instance needs label maps f, i and j")
        p, q = self.p, self.q
        green = self.green_indices(p)
        assert green is not None
        p_pos = {lbl: i for i, lbl in enumerate(p.labels)}
        q_pos = {lbl: i for i, lbl in enumerate(q.labels)}

        def table_to_map(name, source, target, target_pos) -> MonotoneMap:
            table = self.map_tables[name]
            images = []
            for lbl in source.labels:
                if lbl not in table:
                    raise ParameterError(f"map {name} is not total: missing {lbl!r}")
                img = table[lbl]
                if img not in target_pos:
                    raise ParameterError(f"map {name} sends {lbl!r} to unknown {img!r}")
                images.append(target_pos[img])
            return MonotoneMap(source, target, tuple(images))

        return DissectionInstance(
            p=p,
            q=q,
            green=green,
            f=table_to_map("f", p, q, q_pos),
            i=table_to_map("i", q, p, p_pos),
            j=table_to_map("j", q, p, p_pos),
        )


def poset_from_doc(doc) -> FiniteBoundedPoset:
    if not isinstance(doc, dict):
        raise ParameterError("poset block must be an object")
    try:
        labels = doc["labels"]
        covers = doc["covers"]
        bottom = doc["bottom"]
        top = doc["top"]
    except KeyError as missing:
        raise ParameterError(f"poset block lacks key {missing}")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ParameterError("labels must be a list of strings")
    if len(set(labels)) != len(labels):
        raise ParameterError("labels must be unique")
    pos = {lbl: i for i, lbl in enumerate(labels)}
    pairs = []
    for pair in covers:
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParameterError(f"malformed cover pair {pair!r}")
        a, b = pair
        if a not in pos or b not in pos:
            raise ParameterError(f"cover pair {pair!r} references unknown labels")
        pairs.append((pos[a], pos[b]))
    if bottom not in pos or top not in pos:
        raise ParameterError("bottom/top must be existing labels")
    return from_covers(tuple(labels), pairs, pos[bottom], pos[top])


def poset_to_doc(p: FiniteBoundedPoset) -> dict:
    return {
        "labels": list(p.labels),
        "covers": [[p.labels[a], p.labels[b]] for a, b in p.covers()],
        "bottom": p.labels[p.bottom],
        "top": p.labels[p.top],
    }


def parse_instance_doc(doc) -> LoadedInstance:
    if not isinstance(doc, dict):
        raise ParameterError("instance document must be a JSON object")
    schema = doc.get("schema")
    if schema != SCHEMA_VERSION:
        raise ParameterError(f"unsupported schema {schema!r}, expected {SCHEMA_VERSION}")
    if "bruhat" in doc:
        block = doc["bruhat"]
        if not isinstance(block, dict):
            raise ParameterError("bruhat block must be an object")
        try:
            n, k = block["n"], block["k"]
        except KeyError as missing:
            raise ParameterError(f"bruhat block lacks key {missing}")
        if not isinstance(n, int) or not isinstance(k, int):
            raise ParameterError("bruhat n and k must be integers")
        kind_name = block.get("order", "single_step")
        try:
            kind = OrderKind(kind_name)
        except ValueError:
            raise ParameterError(f"unknown order kind {kind_name!r}")
        return LoadedInstance(bruhat=(GroundParams(n, k), kind))
    if "P" not in doc:
        raise ParameterError("instance document needs a P block or a bruhat block")
    p = poset_from_doc(doc["P"])
    q = poset_from_doc(doc["Q"]) if "Q" in doc else None
    green = doc.get("green")
    if green is not None:
        if not isinstance(green, list) or not all(isinstance(x, str) for x in green):
            raise ParameterError("green must be a list of labels")
        green = tuple(green)
    maps = doc.get("maps")
    if maps is not None and (
        not isinstance(maps, dict) or not all(isinstance(t, dict) for t in maps.values())
    ):
        raise ParameterError("maps must be an object of label tables")
    return LoadedInstance(p=p, q=q, green_labels=green, map_tables=maps)


def load_instance(path: str) -> LoadedInstance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParameterError(f"cannot read instance file: {exc}")
    except json.JSONDecodeError as exc:
        raise ParameterError(f"instance file is not valid JSON: {exc}")
    return parse_instance_doc(doc)


def instance_to_doc(inst: DissectionInstance) -> dict:
    """Expand a dissection instance into the explicit document form."""
    doc = {
        "schema": SCHEMA_VERSION,
        "P": poset_to_doc(inst.p),
        "Q": poset_to_doc(inst.q),
        "green": [inst.p.labels[i] for i in sorted(inst.green)],
        "maps": {
            "f": {inst.p.labels[x]: inst.q.labels[inst.f.images[x]]
                  for x in range(len(inst.p.labels))},
            "i": {inst.q.labels[a]: inst.p.labels[inst.i.images[a]]
                  for a in range(len(inst.q.labels))},
            "j": {inst.q.labels[a]: inst.p.labels[inst.j.images[a]]
                  for a in range(len(inst.q.labels))},
        },
    }
    return doc
