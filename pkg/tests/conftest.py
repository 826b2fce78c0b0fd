import os
from itertools import product as cartesian

import pytest
from hypothesis import settings, strategies as st

from monoreg import kernels
from monoreg.monomial import Monomial, RingContext, minimalize

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

XYZ = RingContext(3, ("x", "y", "z"))


def ideal(ctx, *gens):
    return ctx.ideal(gens)


@st.composite
def ideals(draw, num_vars=3, max_gens=4, max_exp=3, min_gens=1):
    ctx = RingContext(num_vars)
    vec = st.lists(st.integers(0, max_exp), min_size=num_vars, max_size=num_vars).filter(any)
    gens = draw(st.lists(vec, min_size=min_gens, max_size=max_gens))
    return minimalize([Monomial(g) for g in gens], ctx)


@st.composite
def monomials(draw, num_vars=3, max_exp=3):
    return Monomial(draw(st.lists(st.integers(0, max_exp), min_size=num_vars, max_size=num_vars)))


@st.composite
def complete_intersections(draw, num_vars=4, max_gens=3, max_exp=3):
    """Random monomial CI: generators on disjoint blocks of variables."""
    order = draw(st.permutations(range(num_vars)))
    s = draw(st.integers(1, min(max_gens, num_vars)))
    sizes = draw(st.lists(st.integers(1, 2), min_size=s, max_size=s))
    gens, pos = [], 0
    for size in sizes:
        block = order[pos:pos + size]
        if not block:
            break
        pos += size
        e = [0] * num_vars
        for v in block:
            e[v] = draw(st.integers(1, max_exp))
        gens.append(Monomial(e))
    return minimalize(gens, RingContext(num_vars))


def monomials_up_to(num_vars, max_degree):
    for e in cartesian(range(max_degree + 1), repeat=num_vars):
        if sum(e) <= max_degree:
            yield Monomial(e)


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    previous = kernels.backend()
    kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(previous)


# Acceptance verdicts, printed as one line per criterion after the run.
AC_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not AC_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(AC_RESULTS, key=lambda k: int(k[2:])):
        ok, detail = AC_RESULTS[name]
        terminalreporter.write_line(f"{name} {'PASS' if ok else 'FAIL'}  {detail}")
