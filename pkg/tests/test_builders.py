import json

import pytest

from wha_lab import builders
from wha_lab.builders import (
    FiniteGroupoid,
    connected_groupoid,
    cyclic_group,
    disjoint_union,
    dumps,
    from_expression,
    groupoid_algebra,
    groupoid_loads,
    groupoid_to_json_dict,
    loads,
    pair_groupoid,
    parse_group,
    symmetric_group,
)
from wha_lab.core import verify_axioms
from wha_lab.errors import AxiomViolation, InvalidGroupoid, InvalidParams, ParseError, SizeLimitExceeded


@pytest.mark.parametrize("expr,dim", [("pair(2)", 4), ("pair(3)", 9), ("grp(Z3)", 3), ("grp(S3)", 6),
                                      ("gpd(2,Z2)", 8), ("fun(S3)", 6), ("dual(pair(3))", 9),
                                      ("ds(grp(Z2),pair(2))", 6)])
def test_example_dims(expr, dim):
    A = from_expression(expr)
    assert A.n == dim
    assert verify_axioms(A).passed


@pytest.mark.parametrize("bad", ["pair(x)", "grp(Q8)", "foo(2)", "pair", "gpd(2)"])
def test_bad_expression(bad):
    with pytest.raises(InvalidParams):
        from_expression(bad)


def test_group_tables():
    S3 = symmetric_group(3).validate()
    assert len(S3.morphisms) == 6
    assert S3.compose[("213", "132")] == "231"  # (g h)(i) = g(h(i))
    Z4 = cyclic_group(4).validate()
    assert Z4.compose[("3", "2")] == "1"
    assert parse_group("Z5").morphisms == cyclic_group(5).morphisms


def test_groupoid_shapes():
    G = connected_groupoid(3, cyclic_group(2)).validate()
    assert len(G.morphisms) == 18 and G.is_connected()
    U = disjoint_union(pair_groupoid(2), cyclic_group(3)).validate()
    assert len(U.objects) == 3 and not U.is_connected()


def test_invalid_groupoid():
    G = pair_groupoid(2)
    comp = dict(G.compose)
    key = next(k for k in comp if k[0] != k[1])
    comp[key] = key[0]
    bad = FiniteGroupoid(G.objects, G.morphisms, G.source, G.target, comp, G.identity, G.inverse)
    with pytest.raises(InvalidGroupoid):
        bad.validate()


def test_dim_cap():
    with pytest.raises(SizeLimitExceeded):
        from_expression("pair(3)", dim_cap=8)


def test_json_roundtrip():
    A = from_expression("gpd(2,Z2)")
    B = loads(dumps(A))
    assert B.same_structure(A) and B.label == A.label
    assert dumps(B) == dumps(A)


def test_json_null_antipode_is_solved():
    A = from_expression("pair(2)")
    data = json.loads(dumps(A))
    data["antipode"] = None
    B = loads(json.dumps(data))
    assert all(x == y for x, y in zip(B.S.reshape(-1), A.S.reshape(-1)))


def test_json_errors():
    text = dumps(from_expression("grp(Z2)"))
    with pytest.raises(ParseError) as exc:
        loads(text[:-5])
    assert exc.value.line is not None
    data = json.loads(text)
    data["mult"][0][0][0] = "x/y"
    with pytest.raises(ParseError) as exc:
        loads(json.dumps(data))
    assert exc.value.field == "mult"
    data = json.loads(text)
    del data["counit"]
    with pytest.raises(ParseError):
        loads(json.dumps(data))
    data = json.loads(text)
    data["mult"][1][1][0] = "2"
    with pytest.raises(AxiomViolation) as exc:
        loads(json.dumps(data))
    assert exc.value.axiom
    with pytest.raises(SizeLimitExceeded):
        loads(text, dim_cap=1)


def test_groupoid_json_roundtrip():
    G = connected_groupoid(2, cyclic_group(2))
    H = groupoid_loads(json.dumps(groupoid_to_json_dict(G)))
    assert groupoid_algebra(H).same_structure(groupoid_algebra(G))


def test_file_io(tmp_path):
    A = from_expression("grp(S3)")
    path = tmp_path / "s3.json"
    builders.save(A, path)
    assert builders.load(path).same_structure(A)
    with pytest.raises(ParseError):
        builders.load(tmp_path / "missing.json")
