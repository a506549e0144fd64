"""Completions of indexed categories: adjoints, exchange laws, span extension."""
import pytest

from spanpoly.completion import (
    CompletionObject,
    check_biproduct_preservation,
    check_CB,
    check_CB_fiber,
    check_extension_composition,
    completion_compose,
    completion_homs,
    completion_iso,
    completion_obj,
    extend_to_spans,
    hom_bijection,
    hom_bijection_map,
    mu_flatten,
    product_from_family,
    pushforward,
    reindex,
    reindex_mor,
    representable_indexed,
    slice_indexed,
    sum_from_family,
    SpanExtension,
    terminal_indexed,
    unit_eta,
    unit_rho,
)
from spanpoly.errors import BoundaryMismatch
from spanpoly.finact import (
    GMap,
    SliceObject,
    compose_gmaps,
    coproduct,
    delta,
    identity_gmap,
    initial_gset,
    iso_gsets,
    pi_slice,
    sigma,
    slice_identity,
    slice_iso,
    unique_from_initial,
)
from spanpoly.mackey import BurnsideMackey, atoms, eval_span, vectorize_slice
from spanpoly.sampling import random_cospan, random_gset, random_map_into, random_slice
from spanpoly.spans import Span
from spanpoly.util_linear import mat_apply


@pytest.fixture
def e_cat():
    return slice_indexed()


def test_reindex_identity(e_cat, f2, rng):
    leg = random_map_into(rng, f2, 5)
    o = completion_obj(e_cat, leg, random_slice(rng, leg.dom, 5))
    back = reindex(e_cat, identity_gmap(f2), o)
    assert completion_iso(e_cat, back, o) is not None


def test_reindex_terminal_instance(c2, f2, u2):
    one = terminal_indexed()
    o = completion_obj(one, u2, "*")
    back = reindex(one, u2, o)
    assert back.stage.size == 4
    assert iso_gsets(back.stage, coproduct(f2, f2).sum) is not None


def test_reindex_along_initial(e_cat, c2, f2, rng):
    leg = random_map_into(rng, f2, 5)
    o = completion_obj(e_cat, leg, random_slice(rng, leg.dom, 5))
    z = unique_from_initial(f2)
    back = reindex(e_cat, z, o)
    assert back.stage.size == 0


def test_pushforward_is_sigma_on_slices(e_cat, c2, f2, u2, rng):
    a = random_slice(rng, f2, 5)
    o = completion_obj(e_cat, a.arrow, slice_identity(a.total))
    pushed = pushforward(e_cat, u2, o)
    assert pushed.u.table == sigma(u2, a).arrow.table
    with pytest.raises(BoundaryMismatch):
        pushforward(e_cat, u2, pushed)


def test_pushforward_identity(e_cat, f2, rng):
    leg = random_map_into(rng, f2, 5)
    o = completion_obj(e_cat, leg, random_slice(rng, leg.dom, 4))
    assert pushforward(e_cat, identity_gmap(f2), o) == o


def test_hom_bijection_identity(e_cat, f2, rng):
    leg = random_map_into(rng, f2, 4)
    o = completion_obj(e_cat, leg, random_slice(rng, leg.dom, 4))
    o2 = completion_obj(e_cat, random_map_into(rng, f2, 4),
                        random_slice(rng, f2, 0))
    o2 = CompletionObject(o2.u, random_slice(rng, o2.stage, 4))
    rep = hom_bijection(e_cat, o, o2, identity_gmap(f2))
    assert rep.passed


def test_hom_bijection_free(e_cat, c2, f2, pt2, u2, rng):
    for _ in range(4):
        leg = random_map_into(rng, f2, 4)
        o = completion_obj(e_cat, leg, random_slice(rng, leg.dom, 4))
        leg2 = random_map_into(rng, pt2, 4)
        o2 = completion_obj(e_cat, leg2, random_slice(rng, leg2.dom, 4))
        rep = hom_bijection(e_cat, o, o2, u2)
        assert rep.passed, rep.render_text()


def test_hom_bijection_empty_side(e_cat, c2, f2, pt2, u2):
    zero = initial_gset(c2)
    o = completion_obj(e_cat, unique_from_initial(f2), slice_identity(zero))
    o2 = completion_obj(e_cat, identity_gmap(pt2), slice_identity(pt2))
    lhs, rhs, _ = hom_bijection_map(e_cat, o, o2, u2)
    assert len(lhs) == len(rhs) == 1  # the empty stage maps in exactly one way
    # genuinely empty hom-sets on both sides: no fiber map into an empty slice
    o3 = completion_obj(e_cat, identity_gmap(f2), slice_identity(f2))
    o4 = completion_obj(e_cat, identity_gmap(pt2),
                        SliceObject(unique_from_initial(pt2)))
    lhs2, rhs2, _ = hom_bijection_map(e_cat, o3, o4, u2)
    assert len(lhs2) == len(rhs2) == 0


def test_hom_bijection_naturality_second_argument(e_cat, c2, f2, pt2, u2, rng):
    """Postcomposition squares of the adjunction correspondence commute."""
    leg = random_map_into(rng, f2, 3)
    o = completion_obj(e_cat, leg, random_slice(rng, leg.dom, 3))
    leg2 = random_map_into(rng, pt2, 3)
    o2 = completion_obj(e_cat, leg2, random_slice(rng, leg2.dom, 3))
    o3 = o2  # endomorphisms always include the identity
    psis = completion_homs(e_cat, o2, o3)
    assert psis
    pushed = pushforward(e_cat, u2, o)
    lhs2, _, img2 = hom_bijection_map(e_cat, o, o2, u2)
    lhs3, _, img3 = hom_bijection_map(e_cat, o, o3, u2)
    to3 = {(w.table, xi.table): im for (w, xi), im in zip(lhs3, img3)}
    back2 = reindex(e_cat, u2, o2)
    back3 = reindex(e_cat, u2, o3)
    for psi in psis[:2]:
        psi_bar = reindex_mor(e_cat, u2, o2, o3, psi)
        for (alpha, image) in list(zip(lhs2, img2))[:3]:
            comp_up = completion_compose(e_cat, pushed, o2, o3, alpha, psi)
            key = (comp_up[0].table, comp_up[1].table)
            assert key in to3
            img_up = to3[key]
            comp_down = completion_compose(e_cat, o, back2, back3, image, psi_bar)
            assert img_up[0].table == comp_down[0].table
            assert img_up[1].table == comp_down[1].table


def test_hom_bijection_dual(e_cat, c2, f2, pt2, u2, rng):
    """Pushing the leg is right adjoint to reindexing on the product side."""
    from spanpoly.completion import completion_homs_dual, hom_bijection_dual
    for _ in range(4):
        leg = random_map_into(rng, f2, 3)
        o = completion_obj(e_cat, leg, random_slice(rng, leg.dom, 3))
        leg2 = random_map_into(rng, pt2, 3)
        o2 = completion_obj(e_cat, leg2, random_slice(rng, leg2.dom, 3))
        rep = hom_bijection_dual(e_cat, o, o2, u2)
        assert rep.passed, rep.render_text()
    # identity case: both sides are the dual endomorphisms
    leg = random_map_into(rng, f2, 3)
    o = completion_obj(e_cat, leg, random_slice(rng, leg.dom, 3))
    assert hom_bijection_dual(e_cat, o, o, identity_gmap(f2)).passed
    homs = completion_homs_dual(e_cat, o, o)
    assert homs  # at least the identity morphism


def test_check_cb_identity_square(e_cat, f2, rng):
    leg = random_map_into(rng, f2, 4)
    o = completion_obj(e_cat, leg, random_slice(rng, leg.dom, 4))
    rep = check_CB(e_cat, identity_gmap(f2), identity_gmap(f2), [o])
    assert rep.passed


def test_check_cb_random_squares(e_cat, c2, s3, rng):
    for group in (c2, s3):
        for _ in range(3):
            f, g = random_cospan(rng, group, 5)
            leg = random_map_into(rng, f.dom, 4)
            o = completion_obj(e_cat, leg, random_slice(rng, leg.dom, 4))
            assert check_CB(e_cat, f, g, [o]).passed


def test_check_cb_representable(c2, rng):
    k = random_gset(rng, c2, 3)
    rk = representable_indexed(k)
    for _ in range(3):
        f, g = random_cospan(rng, c2, 4)
        leg = random_map_into(rng, f.dom, 3)
        x = random_slice(rng, rk.carrier(leg.dom), 4)
        o = completion_obj(rk, leg, x)
        assert check_CB(rk, f, g, [o]).passed


def test_unit_and_mu_monad_laws(e_cat, c2, f2, rng):
    leg = random_map_into(rng, f2, 4)
    o = completion_obj(e_cat, leg, random_slice(rng, leg.dom, 4))
    # unit at the completion, then flatten: exact identity
    assert mu_flatten(CompletionObject(identity_gmap(f2), o)) == o
    # completion of the unit, then flatten: exact identity
    inner = CompletionObject(o.u, unit_eta(o.stage, o.x))
    assert mu_flatten(inner) == o
    # mu on nested data composes the legs
    leg2 = random_map_into(rng, leg.dom, 4)
    nested = CompletionObject(leg, CompletionObject(leg2, random_slice(rng, leg2.dom, 3)))
    flat = mu_flatten(nested)
    assert flat.u.table == compose_gmaps(leg, leg2).table


def test_sum_and_product_from_family(e_cat, c2, f2, pt2, u2, rng):
    a = random_slice(rng, f2, 4)
    o = completion_obj(e_cat, u2, a)
    s = sum_from_family(e_cat, o)
    assert slice_iso(s, sigma(u2, a)) is not None
    p = product_from_family(e_cat, o)
    assert slice_iso(p, pi_slice(u2, a)) is not None
    # rho then the product assignment is the identity up to iso
    x = random_slice(rng, f2, 4)
    assert slice_iso(product_from_family(e_cat, unit_rho(f2, x)), x) is not None


def test_dual_cb_fiber(e_cat, c2, rng):
    for _ in range(4):
        f, g = random_cospan(rng, c2, 4)
        xs = [random_slice(rng, f.dom, 4) for _ in range(2)]
        assert check_CB_fiber(e_cat, f, g, xs, mode="norm").passed
        assert check_CB_fiber(e_cat, f, g, xs, mode="push").passed


def test_extend_identity_span(e_cat, f2, rng):
    ext = SpanExtension(e_cat, Span(identity_gmap(f2), identity_gmap(f2)))
    x = random_slice(rng, f2, 4)
    assert slice_iso(ext(x), x) is not None


def test_extend_matches_burnside_transfer_restriction(e_cat, c2, f2, pt2, u2):
    """The span action on slices agrees with the Burnside matrix action."""
    p = Span(u2, u2)
    ext = extend_to_spans(e_cat, p,
                          probe_squares=[(u2, u2)],
                          probe_objects=[slice_identity(f2)])
    b = BurnsideMackey(c2)
    gens = atoms(pt2)
    mat = eval_span(b, p)
    for i, g in enumerate(gens):
        from spanpoly.mackey import atom_slice
        image = ext(atom_slice(pt2, g))
        basis = tuple(1 if j == i else 0 for j in range(len(gens)))
        assert vectorize_slice(image, gens) == mat_apply(mat, basis)


def test_extension_respects_iso_classes(e_cat, c2, rng):
    from spanpoly.sampling import random_span, shuffle_span, shuffle_slice
    u = random_gset(rng, c2, 4)
    v = random_gset(rng, c2, 4)
    p = random_span(rng, u, v, 4)
    q = shuffle_span(rng, p)
    ext_p = SpanExtension(e_cat, p)
    ext_q = SpanExtension(e_cat, q)
    x = random_slice(rng, v, 4)
    assert slice_iso(ext_p(x), ext_q(x)) is not None
    assert slice_iso(ext_p(x), ext_p(shuffle_slice(rng, x))) is not None


def test_extension_composition_random(e_cat, c2, rng):
    from spanpoly.sampling import random_span
    for _ in range(4):
        u = random_gset(rng, c2, 4)
        v = random_gset(rng, c2, 4)
        w = random_gset(rng, c2, 4)
        p = random_span(rng, u, v, 4)
        q = random_span(rng, v, w, 4)
        probes = [random_slice(rng, w, 4) for _ in range(2)]
        assert check_extension_composition(e_cat, p, q, probes).passed


def test_cocompleteness_probe_gate(e_cat, c2, f2, u2):
    # a healthy instance passes the gate; the gate actually runs the probes
    ext = extend_to_spans(e_cat, Span(u2, u2),
                          probe_squares=[(u2, u2)],
                          probe_objects=[slice_identity(f2)])
    assert ext(slice_identity(terminal := u2.cod)).base == terminal


def test_biproduct_preservation_instances(e_cat, c2, f2, pt2, rng):
    pairs = [(random_slice(rng, f2, 4), random_slice(rng, pt2, 4)) for _ in range(2)]
    assert check_biproduct_preservation(e_cat, f2, pt2, pairs).passed
    one = terminal_indexed()
    assert check_biproduct_preservation(one, f2, pt2, [("*", "*")]).passed
    k = random_gset(rng, c2, 3)
    rk = representable_indexed(k)
    pairs_k = [(random_slice(rng, rk.carrier(f2), 4),
                random_slice(rng, rk.carrier(pt2), 4)) for _ in range(2)]
    assert check_biproduct_preservation(rk, f2, pt2, pairs_k).passed


def test_hom_bijection_representable(c2, f2, pt2, u2, rng):
    k = random_gset(rng, c2, 2)
    rk = representable_indexed(k)
    leg = random_map_into(rng, f2, 3)
    o = completion_obj(rk, leg, random_slice(rng, rk.carrier(leg.dom), 3))
    leg2 = random_map_into(rng, pt2, 3)
    o2 = completion_obj(rk, leg2, random_slice(rng, rk.carrier(leg2.dom), 3))
    assert hom_bijection(rk, o, o2, u2).passed


def test_dual_cb_fiber_representable(c2, rng):
    k = random_gset(rng, c2, 2)
    rk = representable_indexed(k)
    f, g = random_cospan(rng, c2, 3)
    xs = [random_slice(rng, rk.carrier(f.dom), 3) for _ in range(2)]
    assert check_CB_fiber(rk, f, g, xs, mode="norm").passed
    assert check_CB_fiber(rk, f, g, xs, mode="push").passed


def test_indexed_by_name(c2, f2):
    from spanpoly.completion import indexed_by_name
    from spanpoly.errors import InvalidStructure
    assert indexed_by_name("terminal").name == "terminal"
    assert indexed_by_name("slice").name == "slices"
    assert indexed_by_name("representable", f2).carrier(f2).size == 4
    with pytest.raises(InvalidStructure):
        indexed_by_name("representable")
    with pytest.raises(InvalidStructure):
        indexed_by_name("nope")


def test_fiber_hom_resource_guard(c2, pt2):
    from spanpoly.errors import ResourceLimit
    from spanpoly.completion import SliceIndexed
    small = SliceIndexed(hom_limit=10)
    four = coproduct(coproduct(pt2, pt2).sum, coproduct(pt2, pt2).sum).sum
    a = SliceObject(GMap(four, pt2, (0,) * 4))
    b = SliceObject(GMap(four, pt2, (0,) * 4))
    with pytest.raises(ResourceLimit):
        small.fiber_hom(a, b)  # 4^4 maps over the point


def test_completion_homs_resource_guard(e_cat, c2, pt2):
    from spanpoly.errors import ResourceLimit
    four = coproduct(coproduct(pt2, pt2).sum, coproduct(pt2, pt2).sum).sum
    o = completion_obj(e_cat, GMap(four, pt2, (0,) * 4), slice_identity(four))
    o2 = completion_obj(e_cat, GMap(four, pt2, (0,) * 4), slice_identity(four))
    with pytest.raises(ResourceLimit):
        completion_homs(e_cat, o, o2, limit=10)


def test_fiber_coproduct_universality(e_cat, c2, f2, rng):
    from spanpoly.completion import check_fiber_coproduct, fiber_coproduct
    x = random_slice(rng, f2, 3)
    y = random_slice(rng, f2, 3)
    targets = [random_slice(rng, f2, 3) for _ in range(2)]
    rep = check_fiber_coproduct(e_cat, f2, x, y, targets)
    assert rep.passed, rep.render_text()
    z = fiber_coproduct(e_cat, f2, x, y)
    assert z.size == x.size + y.size


def test_mu_associativity_exact(e_cat, c2, f2, rng):
    leg1 = random_map_into(rng, f2, 4)
    leg2 = random_map_into(rng, leg1.dom, 4)
    leg3 = random_map_into(rng, leg2.dom, 4)
    triple = CompletionObject(leg1, CompletionObject(leg2, CompletionObject(
        leg3, random_slice(rng, leg3.dom, 3))))
    # flatten the two outer layers first, or the two inner ones: same object
    outer_first = mu_flatten(CompletionObject(compose_gmaps(leg1, leg2), triple.x.x))
    inner_first = mu_flatten(CompletionObject(leg1, mu_flatten(triple.x)))
    assert outer_first == inner_first


def test_compose_witness_chases_descriptors(e_cat, c2, f2, u2, rng):
    b = random_slice(rng, f2.group and u2.cod, 4)
    w = e_cat.compose_witness(u2, identity_gmap(f2), b)
    assert w.is_bijective()
    lhs = delta(identity_gmap(f2), delta(u2, b))
    rhs = delta(u2, b)
    assert compose_gmaps(rhs.arrow, w).table == lhs.arrow.table


def test_completion_obj_validation(e_cat, c2, f2, u2, rng):
    from spanpoly.errors import InvalidStructure
    with pytest.raises(InvalidStructure):
        completion_obj(e_cat, u2, slice_identity(f2.group and u2.cod))  # wrong stage
