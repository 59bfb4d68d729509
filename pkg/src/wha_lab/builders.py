"""Example weak Hopf algebras from finite groupoids, and JSON file I/O."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import WeakHopfAlgebra, direct_sum, dual, solve_antipode, verify_axioms
from .errors import AxiomViolation, InvalidGroupoid, InvalidParams, ParseError, SizeLimitExceeded
from .numerics import q, q_str, qarray, qzeros

DEFAULT_DIM_CAP = 256


@dataclass(frozen=True)
class FiniteGroupoid:
    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    source: dict
    target: dict
    compose: dict  # (g, h) -> g o h, defined iff source(g) == target(h)
    identity: dict
    inverse: dict

    def validate(self) -> "FiniteGroupoid":
        objs, mors = set(self.objects), set(self.morphisms)
        if len(objs) != len(self.objects) or len(mors) != len(self.morphisms):
            raise InvalidGroupoid("duplicate object or morphism labels")
        for g in self.morphisms:
            if self.source.get(g) not in objs or self.target.get(g) not in objs:
                raise InvalidGroupoid(f"morphism {g!r} has unknown endpoints")
        for x in self.objects:
            u = self.identity.get(x)
            if u not in mors or self.source[u] != x or self.target[u] != x:
                raise InvalidGroupoid(f"object {x!r} has no valid identity")
        for g, h in itertools.product(self.morphisms, repeat=2):
            composable = self.source[g] == self.target[h]
            if composable != ((g, h) in self.compose):
                raise InvalidGroupoid(f"composition of {g!r} and {h!r} is wrongly (un)defined")
            if composable:
                gh = self.compose[(g, h)]
                if gh not in mors or self.source[gh] != self.source[h] or self.target[gh] != self.target[g]:
                    raise InvalidGroupoid(f"composite of {g!r} and {h!r} has wrong endpoints")
        for g in self.morphisms:
            if self.compose[(g, self.identity[self.source[g]])] != g or \
                    self.compose[(self.identity[self.target[g]], g)] != g:
                raise InvalidGroupoid(f"identity law fails at {g!r}")
            gi = self.inverse.get(g)
            if gi not in mors or self.source[gi] != self.target[g] or \
                    self.compose[(g, gi)] != self.identity[self.target[g]] or \
                    self.compose[(gi, g)] != self.identity[self.source[g]]:
                raise InvalidGroupoid(f"{g!r} has no valid inverse")
        for (g, h), gh in self.compose.items():
            for k in self.morphisms:
                if self.source[h] == self.target[k]:
                    if self.compose[(gh, k)] != self.compose[(g, self.compose[(h, k)])]:
                        raise InvalidGroupoid(f"associativity fails at ({g!r}, {h!r}, {k!r})")
        return self

    def ordered_morphisms(self) -> list[str]:
        idx = {x: i for i, x in enumerate(self.objects)}
        return sorted(self.morphisms, key=lambda g: (idx[self.source[g]], idx[self.target[g]], g))

    def is_connected(self) -> bool:
        if not self.objects:
            return False
        reach = {self.objects[0]}
        changed = True
        while changed:
            changed = False
            for g in self.morphisms:
                s, t = self.source[g], self.target[g]
                if (s in reach) != (t in reach):
                    reach |= {s, t}
                    changed = True
        return len(reach) == len(self.objects)


def _check_cap(count: int, dim_cap: int):
    if count > dim_cap:
        raise SizeLimitExceeded(f"{count} morphisms exceed the dimension cap {dim_cap}")


def _group(labels: list[str], product, inverse, identity: str, obj: str = "*") -> FiniteGroupoid:
    return FiniteGroupoid(
        objects=(obj,),
        morphisms=tuple(labels),
        source={g: obj for g in labels},
        target={g: obj for g in labels},
        compose={(g, h): product(g, h) for g in labels for h in labels},
        identity={obj: identity},
        inverse={g: inverse(g) for g in labels},
    )


def cyclic_group(n: int, dim_cap: int = DEFAULT_DIM_CAP) -> FiniteGroupoid:
    if n < 1:
        raise InvalidParams("group order must be at least 1")
    _check_cap(n, dim_cap)
    width = len(str(n - 1))
    labels = [str(i).zfill(width) for i in range(n)]
    return _group(labels,
                  lambda g, h: labels[(int(g) + int(h)) % n],
                  lambda g: labels[(-int(g)) % n],
                  labels[0])


def symmetric_group(n: int, dim_cap: int = DEFAULT_DIM_CAP) -> FiniteGroupoid:
    """Permutations in one-line notation; (g h)(i) = g(h(i))."""
    if not 1 <= n <= 4:
        raise InvalidParams("symmetric groups are supported for 1 <= n <= 4")
    perms = list(itertools.permutations(range(1, n + 1)))
    _check_cap(len(perms), dim_cap)
    lab = {p: "".join(map(str, p)) for p in perms}
    parse = {v: k for k, v in lab.items()}

    def product(g, h):
        pg, ph = parse[g], parse[h]
        return lab[tuple(pg[ph[i] - 1] for i in range(n))]

    def inverse(g):
        pg = parse[g]
        inv = [0] * n
        for i, v in enumerate(pg):
            inv[v - 1] = i + 1
        return lab[tuple(inv)]

    return _group([lab[p] for p in perms], product, inverse, lab[tuple(range(1, n + 1))])


def parse_group(name: str, dim_cap: int = DEFAULT_DIM_CAP) -> FiniteGroupoid:
    m = re.fullmatch(r"\s*([ZS])(\d+)\s*", name)
    if not m:
        raise InvalidParams(f"unknown group {name!r} (use Z<n> or S<n>)")
    kind, n = m.group(1), int(m.group(2))
    return cyclic_group(n, dim_cap) if kind == "Z" else symmetric_group(n, dim_cap)


def connected_groupoid(n_objects: int, vertex_group: FiniteGroupoid,
                       dim_cap: int = DEFAULT_DIM_CAP) -> FiniteGroupoid:
    """Objects 0..n-1, morphisms (i -> j, g) composing as (j->k, g)(i->j, h) = (i->k, gh)."""
    if n_objects < 1:
        raise InvalidParams("need at least one object")
    if len(vertex_group.objects) != 1:
        raise InvalidParams("vertex group must be a one-object groupoid")
    G = vertex_group
    _check_cap(n_objects * n_objects * len(G.morphisms), dim_cap)
    width = len(str(n_objects - 1))
    objs = [str(i).zfill(width) for i in range(n_objects)]
    one = G.identity[G.objects[0]]
    plain = len(G.morphisms) == 1

    def lab(i, j, g):
        return f"{objs[i]}>{objs[j]}" if plain else f"{objs[i]}>{objs[j]}:{g}"

    mors, src, tgt, inv = [], {}, {}, {}
    info = {}
    for i in range(n_objects):
        for j in range(n_objects):
            for g in G.morphisms:
                m = lab(i, j, g)
                mors.append(m)
                src[m], tgt[m] = objs[i], objs[j]
                info[m] = (i, j, g)
                inv[m] = lab(j, i, G.inverse[g])
    compose = {}
    for a in mors:
        j2, k, g = info[a]
        for b in mors:
            i, j, h = info[b]
            if j == j2:
                compose[(a, b)] = lab(i, k, G.compose[(g, h)])
    return FiniteGroupoid(tuple(objs), tuple(mors), src, tgt, compose,
                          {objs[i]: lab(i, i, one) for i in range(n_objects)}, inv)


def pair_groupoid(n: int, dim_cap: int = DEFAULT_DIM_CAP) -> FiniteGroupoid:
    return connected_groupoid(n, cyclic_group(1), dim_cap)


def disjoint_union(G1: FiniteGroupoid, G2: FiniteGroupoid,
                   dim_cap: int = DEFAULT_DIM_CAP) -> FiniteGroupoid:
    _check_cap(len(G1.morphisms) + len(G2.morphisms), dim_cap)

    def tag(G, p):
        return lambda x: f"{p}.{x}"

    parts = [(G1, tag(G1, "1")), (G2, tag(G2, "2"))]
    objs, mors, src, tgt, comp, ident, inv = [], [], {}, {}, {}, {}, {}
    for G, t in parts:
        objs += [t(x) for x in G.objects]
        mors += [t(g) for g in G.morphisms]
        src.update({t(g): t(G.source[g]) for g in G.morphisms})
        tgt.update({t(g): t(G.target[g]) for g in G.morphisms})
        comp.update({(t(g), t(h)): t(v) for (g, h), v in G.compose.items()})
        ident.update({t(x): t(u) for x, u in G.identity.items()})
        inv.update({t(g): t(v) for g, v in G.inverse.items()})
    return FiniteGroupoid(tuple(objs), tuple(mors), src, tgt, comp, ident, inv)


def groupoid_algebra(G: FiniteGroupoid, label: str = "", dim_cap: int = DEFAULT_DIM_CAP) -> WeakHopfAlgebra:
    G.validate()
    basis = G.ordered_morphisms()
    n = len(basis)
    _check_cap(n, dim_cap)
    idx = {g: i for i, g in enumerate(basis)}
    mult = qzeros((n, n, n))
    for (g, h), gh in G.compose.items():
        mult[idx[g], idx[h], idx[gh]] = q(1)
    unit = qzeros(n)
    for u in G.identity.values():
        unit[idx[u]] = q(1)
    comult = qzeros((n, n, n))
    for i in range(n):
        comult[i, i, i] = q(1)
    counit = qarray([1] * n)
    S = qzeros((n, n))
    for g in basis:
        S[idx[G.inverse[g]], idx[g]] = q(1)
    return WeakHopfAlgebra(n, mult, unit, comult, counit, S, label)


# ------------------------------------------------------------ named examples

def pair(n: int, dim_cap: int = DEFAULT_DIM_CAP) -> WeakHopfAlgebra:
    return groupoid_algebra(pair_groupoid(n, dim_cap), f"pair({n})", dim_cap)


def grp(name: str, dim_cap: int = DEFAULT_DIM_CAP) -> WeakHopfAlgebra:
    return groupoid_algebra(parse_group(name, dim_cap), f"grp({name})", dim_cap)


def fun(name: str, dim_cap: int = DEFAULT_DIM_CAP) -> WeakHopfAlgebra:
    A = dual(grp(name, dim_cap))
    return WeakHopfAlgebra(A.n, A.mult, A.unit, A.comult, A.counit, A.antipode, f"fun({name})")


def gpd(n_objects: int, group: str, dim_cap: int = DEFAULT_DIM_CAP) -> WeakHopfAlgebra:
    G = connected_groupoid(n_objects, parse_group(group, dim_cap), dim_cap)
    return groupoid_algebra(G, f"gpd({n_objects},{group})", dim_cap)


def _split_args(s: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur.strip())
    return out


def from_expression(expr: str, dim_cap: int = DEFAULT_DIM_CAP) -> WeakHopfAlgebra:
    """Build from names like ``pair(2)``, ``grp(S3)``, ``gpd(2,Z2)``, ``fun(S3)``,
    ``dual(pair(3))`` and ``ds(grp(Z2),pair(2))``."""
    m = re.fullmatch(r"\s*(\w+)\((.*)\)\s*", expr)
    if not m:
        raise InvalidParams(f"cannot parse example {expr!r}")
    head, args = m.group(1), _split_args(m.group(2))
    try:
        if head == "pair" and len(args) == 1:
            return pair(int(args[0]), dim_cap)
        if head == "grp" and len(args) == 1:
            return grp(args[0], dim_cap)
        if head == "fun" and len(args) == 1:
            return fun(args[0], dim_cap)
        if head == "gpd" and len(args) == 2:
            return gpd(int(args[0]), args[1], dim_cap)
        if head == "dual" and len(args) == 1:
            inner = from_expression(args[0], dim_cap)
            D = dual(inner)
            return WeakHopfAlgebra(D.n, D.mult, D.unit, D.comult, D.counit, D.antipode, expr.replace(" ", ""))
        if head == "ds" and len(args) == 2:
            A, B = from_expression(args[0], dim_cap), from_expression(args[1], dim_cap)
            _check_cap(A.n + B.n, dim_cap)
            return direct_sum(A, B, expr.replace(" ", ""))
    except ValueError as exc:
        raise InvalidParams(str(exc)) from None
    raise InvalidParams(f"unknown example {expr!r}")


# ------------------------------------------------------------------ JSON I/O

def to_json_dict(A: WeakHopfAlgebra) -> dict:
    def enc(arr):
        return np.vectorize(q_str, otypes=[object])(arr).tolist() if arr.size else arr.tolist()

    return {
        "dim": A.n,
        "label": A.label,
        "mult": enc(A.mult),
        "unit": enc(A.unit),
        "comult": enc(A.comult),
        "counit": enc(A.counit),
        "antipode": None if A.antipode is None else enc(A.antipode),
    }


def dumps(A: WeakHopfAlgebra) -> str:
    return json.dumps(to_json_dict(A), separators=(",", ":")) + "\n"


def save(A: WeakHopfAlgebra, path) -> None:
    Path(path).write_text(dumps(A))


def _decode(value, shape, field):
    try:
        arr = np.array(value, dtype=object)
    except ValueError:
        raise ParseError("ragged array", field=field) from None
    if arr.shape != shape:
        raise ParseError(f"expected shape {shape}, got {arr.shape}", field=field)
    try:
        return qarray(arr) if arr.size else qzeros(shape)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational entry ({exc})", field=field) from None


def loads(text: str, dim_cap: int = DEFAULT_DIM_CAP, validate: bool = True) -> WeakHopfAlgebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    for key in ("dim", "mult", "unit", "comult", "counit"):
        if key not in data:
            raise ParseError("missing field", field=key)
    n = data["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("dim must be a positive integer", field="dim")
    if n > dim_cap:
        raise SizeLimitExceeded(f"dimension {n} exceeds the cap {dim_cap}")
    label = data.get("label", "")
    if not isinstance(label, str):
        raise ParseError("label must be a string", field="label")
    S = data.get("antipode")
    A = WeakHopfAlgebra(
        n=n,
        mult=_decode(data["mult"], (n, n, n), "mult"),
        unit=_decode(data["unit"], (n,), "unit"),
        comult=_decode(data["comult"], (n, n, n), "comult"),
        counit=_decode(data["counit"], (n,), "counit"),
        antipode=None if S is None else _decode(S, (n, n), "antipode"),
        label=label,
    )
    if not validate:
        return A
    report = verify_axioms(A, include_antipode=False)
    if not report.passed:
        raise AxiomViolation(*report.first_failure)
    if A.antipode is None:
        return A.with_antipode(solve_antipode(A))
    report = verify_axioms(A)
    if not report.passed:
        raise AxiomViolation(*report.first_failure)
    return A


def load(path, dim_cap: int = DEFAULT_DIM_CAP, validate: bool = True) -> WeakHopfAlgebra:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, dim_cap, validate)


# -------------------------------------------------------- groupoid JSON I/O

def groupoid_to_json_dict(G: FiniteGroupoid) -> dict:
    return {
        "objects": list(G.objects),
        "morphisms": [{"id": g, "src": G.source[g], "tgt": G.target[g]} for g in G.morphisms],
        "compose": [[g, h, v] for (g, h), v in sorted(G.compose.items())],
        "inverse": [[g, G.inverse[g]] for g in G.morphisms],
    }


def groupoid_loads(text: str, dim_cap: int = DEFAULT_DIM_CAP) -> FiniteGroupoid:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    for key in ("objects", "morphisms", "compose", "inverse"):
        if key not in data:
            raise ParseError("missing field", field=key)
    try:
        objs = tuple(str(x) for x in data["objects"])
        mors = tuple(m["id"] for m in data["morphisms"])
        src = {m["id"]: m["src"] for m in data["morphisms"]}
        tgt = {m["id"]: m["tgt"] for m in data["morphisms"]}
        comp = {(g, h): v for g, h, v in data["compose"]}
        inv = {g: v for g, v in data["inverse"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed groupoid entry ({exc})") from None
    _check_cap(len(mors), dim_cap)
    ident = {}
    for x in objs:
        loops = [g for g in mors if src[g] == x and tgt[g] == x and comp.get((g, g)) == g]
        if len(loops) != 1:
            raise InvalidGroupoid(f"object {x!r} has no unique identity")
        ident[x] = loops[0]
    return FiniteGroupoid(objs, mors, src, tgt, comp, ident, inv).validate()


def groupoid_load(path, dim_cap: int = DEFAULT_DIM_CAP) -> FiniteGroupoid:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return groupoid_loads(text, dim_cap)


def groupoid_save(G: FiniteGroupoid, path) -> None:
    Path(path).write_text(json.dumps(groupoid_to_json_dict(G), indent=1) + "\n")
