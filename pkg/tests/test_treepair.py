import random
from fractions import Fraction

import pytest

from cantorthompson.dyadic import Dyadic
from cantorthompson.errors import NotStandardPartition, NotThompson, OutOfDomain
from cantorthompson.treepair import (
    PLMap,
    Tree,
    TreePair,
    from_pl_map,
    generator,
    generator_pl_map,
    parse_word,
    tree_from_partition,
    word_eval,
)

from _helpers import random_pair, random_tree

D = Dyadic.parse
GRID_10 = [Dyadic(k, 10) for k in range(1 << 10)]


# -- the defining affine formulas of f0..f3, frozen as oracles --

F0_PIECES = [("0", "1/2", Fraction(1, 2), "0"), ("1/2", "3/4", 1, "-1/4"), ("3/4", "1", 2, "-1")]
F1_PIECES = [
    ("0", "1/2", 1, "0"),
    ("1/2", "3/4", Fraction(1, 2), "1/4"),
    ("3/4", "7/8", 1, "-1/8"),
    ("7/8", "1", 2, "-1"),
]
F2_PIECES = [("0", "1/2", Fraction(1, 2), "3/4"), ("1/2", "3/4", 2, "-1"), ("3/4", "1", 1, "-1/4")]
F3_PIECES = [("0", "1/2", Fraction(1, 2), "1/2"), ("1/2", "3/4", 2, "-1"), ("3/4", "1", 1, "0")]


def test_tree_from_partition_examples():
    assert tree_from_partition(["0", "1"]) == Tree.leaf()
    t = tree_from_partition(["0", "1/2", "3/4", "1"])
    assert t == Tree.caret(Tree.leaf(), Tree.caret(Tree.leaf(), Tree.leaf()))
    assert t.to_string() == "clcll"
    with pytest.raises(NotStandardPartition):
        tree_from_partition([Fraction(0), Fraction(1, 3), Fraction(1)])
    # standard widths but misaligned: [1/4, 3/4] is not standard
    with pytest.raises(NotStandardPartition):
        tree_from_partition(["0", "1/4", "3/4", "1"])


def test_tree_string_round_trip():
    rng = random.Random(7)
    for _ in range(50):
        t = random_tree(rng, rng.randint(1, 12))
        assert Tree.from_string(t.to_string()) == t
    with pytest.raises(ValueError):
        Tree.from_string("cl")


def test_reduce_full_cancellation():
    pair = TreePair(
        Tree.caret(Tree.leaf(), Tree.leaf()), Tree.caret(Tree.leaf(), Tree.leaf()), (0, 1)
    )
    assert pair.reduce() == TreePair.identity()


def test_reduce_idempotent_and_padding():
    f0 = generator("f0")
    assert f0.reduce() == f0
    # pad f0 with one caret (refine range leaf 0 and its matched domain leaf)
    target = f0.range.union(Tree([(0, 0, 0), (0, 0, 1), (0, 1), (1,)]))
    padded = f0._expand_range_to(target)
    assert padded.nleaves == f0.nleaves + 1
    assert padded.reduce() == f0
    assert padded.to_pl_map().same_map(f0.to_pl_map())


def test_compose_examples():
    f0 = generator("f0")
    assert f0.compose(f0.inverse()) == TreePair.identity()
    # compose(f0, f0) evaluated at 3/4: f0(f0(3/4)) = f0(1/2) = 1/4
    assert (f0 * f0).eval("3/4") == D("1/4")
    f2 = generator("f2")
    assert (f2 * f2 * f2) == TreePair.identity()
    pl = (f2 * f2 * f2).to_pl_map()
    for k in range(1 << 6):
        x = Dyadic(k, 6)
        assert pl.eval(x) == x


def test_inverse_examples():
    assert TreePair.identity().inverse() == TreePair.identity()
    f0, f1 = generator("f0"), generator("f1")
    assert f0.inverse().eval("1/4") == D("1/2")
    assert f1.inverse().inverse() == f1


def test_classify_examples():
    assert generator("f0").classify() == "F"
    assert generator("f1").classify() == "F"
    assert generator("f2").classify() == "T"
    assert generator("f3").classify() == "V"
    assert TreePair.identity().classify() == "F"


def test_to_pl_map_examples():
    ident = TreePair.identity().to_pl_map()
    assert ident.pieces == PLMap([("0", "1", 1, "0")]).pieces
    assert generator("f0").to_pl_map() == PLMap(F0_PIECES)
    assert generator("f1").to_pl_map() == PLMap(F1_PIECES)
    assert generator("f2").to_pl_map() == PLMap(F2_PIECES)
    assert generator("f3").to_pl_map() == PLMap(F3_PIECES)


def test_from_pl_map_examples():
    assert from_pl_map(PLMap([("0", "1", 1, "0")])) == TreePair.identity()
    f2 = from_pl_map(PLMap(F2_PIECES))
    assert f2.nleaves == 3
    assert f2.classify() == "T"
    assert f2.eval("0") == D("3/4")
    with pytest.raises(NotThompson):
        from_pl_map([("0", "1/3", 3, "0"), ("1/3", "1", Fraction(2, 3), Fraction(1, 3))])


def test_from_pl_map_round_trip():
    rng = random.Random(21)
    for _ in range(40):
        pair = random_pair(rng, 8)
        pl = pair.to_pl_map()
        assert from_pl_map(pl) == pair
        assert from_pl_map(pl).to_pl_map().same_map(pl)


def test_eval_examples_and_domain():
    f0, f2, f3 = generator("f0"), generator("f2"), generator("f3")
    assert f0.eval("1/2") == D("1/4")
    assert f2.eval("0") == D("3/4")
    assert f3.eval("3/4") == D("3/4")
    with pytest.raises(OutOfDomain):
        f0.to_pl_map().eval(Dyadic(1))
    with pytest.raises(OutOfDomain):
        f0.to_pl_map().eval(Dyadic(-1, 2))


def test_generator_fidelity_spot_values():
    assert generator("f0").eval("7/8") == D("3/4")
    assert generator("f1").eval("3/4") == D("5/8")
    assert generator("f2").eval("1/2") == D("0")  # 2x wraps mod 1 at x = 1/2


def test_eval_real_periodic_wrapper():
    pl = generator_pl_map("f2")
    for k in range(-8, 9):
        x = Dyadic(3, 3)
        assert pl.eval_real(x + Dyadic(k)) == pl.eval(x) + Dyadic(k)


def test_word_eval_examples():
    assert word_eval([]) == TreePair.identity()
    assert word_eval([("f0", 1), ("f0", -1)]) == TreePair.identity()
    cubed = word_eval([("f2", 3)])
    assert cubed == TreePair.identity()
    pl = cubed.to_pl_map()
    for k in range(1 << 8):
        assert pl.eval(Dyadic(k, 8)) == Dyadic(k, 8)


def test_parse_word():
    assert parse_word("f0 f1^-1 f2^2") == [("f0", 1), ("f1", -1), ("f2", 2)]
    with pytest.raises(ValueError):
        parse_word("f4")
    with pytest.raises(ValueError):
        parse_word("f0^")


def test_group_axioms_random():
    rng = random.Random(99)
    pairs = [random_pair(rng, 10) for _ in range(200)]
    ident = TreePair.identity()
    for i, a in enumerate(pairs):
        assert a.compose(ident) == a
        assert ident.compose(a) == a
        assert a.compose(a.inverse()) == ident
        assert a.inverse().compose(a) == ident
    for i in range(0, 198, 3):
        a, b, c = pairs[i], pairs[i + 1], pairs[i + 2]
        assert (a * b) * c == a * (b * c)


def test_compose_matches_pl_composition():
    rng = random.Random(5)
    for _ in range(30):
        a, b = random_pair(rng, 8), random_pair(rng, 8)
        pa, pb, pc = a.to_pl_map(), b.to_pl_map(), (a * b).to_pl_map()
        for x in GRID_10:
            assert pc.eval(x) == pa.eval(pb.eval(x))


def test_reduction_canonicity():
    rng = random.Random(17)
    grid_12 = [Dyadic(k, 12) for k in range(1 << 12)]
    for _ in range(15):
        p = random_pair(rng, 8)
        # a no-op expansion has the same reduced form and the same PL map
        extra = random_tree(rng, rng.randint(2, 3))
        leaf = rng.randrange(p.range.nleaves)
        target_addrs = []
        for i, addr in enumerate(p.range.addresses):
            if i == leaf:
                target_addrs.extend(addr + suffix for suffix in extra.addresses)
            else:
                target_addrs.append(addr)
        q = p._expand_range_to(Tree(target_addrs))
        assert q.reduce() == p
        assert q.to_pl_map().same_map(p.to_pl_map())
    # distinct reduced pairs disagree somewhere on the 2^-12 grid
    for _ in range(10):
        p, q = random_pair(rng, 8), random_pair(rng, 8)
        if p == q:
            continue
        pl_p, pl_q = p.to_pl_map(), q.to_pl_map()
        assert any(pl_p.eval(x) != pl_q.eval(x) for x in grid_12)


def test_class_closure():
    rng = random.Random(3)
    for _ in range(40):
        a = random_pair(rng, 8, kinds=("F",))
        b = random_pair(rng, 8, kinds=("F",))
        assert (a * b).classify() == "F"
        assert a.inverse().classify() == a.classify()
    for _ in range(40):
        a = random_pair(rng, 8, kinds=("F", "T"))
        b = random_pair(rng, 8, kinds=("F", "T"))
        assert (a * b).classify() in ("F", "T")
        assert a.inverse().classify() == a.classify()
    for _ in range(40):
        a = random_pair(rng, 8)
        assert a.inverse().classify() == a.classify()


def test_slope_law():
    rng = random.Random(11)
    for _ in range(40):
        p = random_pair(rng, 10)
        pl = p.to_pl_map()
        for i, (lo, hi, m, o) in enumerate(pl.pieces):
            d_dom = len(p.domain.addresses[i])
            d_ran = len(p.range.addresses[p.perm[i]])
            assert m == d_dom - d_ran


def test_known_relation_commutator():
    f0, f1 = generator("f0"), generator("f1")
    u = f0 * f1.inverse()
    v = f0.inverse() * f1 * f0
    comm = u.inverse() * v.inverse() * u * v
    assert comm == TreePair.identity()
    pl = comm.to_pl_map()
    assert all(pl.eval(x) == x for x in GRID_10[:256])


def test_pair_json_round_trip():
    for name in ("f0", "f1", "f2", "f3"):
        g = generator(name)
        assert TreePair.from_json(g.to_json()) == g
