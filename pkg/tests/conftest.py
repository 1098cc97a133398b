import random
import sys

import numpy as np
from hypothesis import strategies as st

from gentor.words import GroupSpec, Word, parse_group, reduce

GROUPS = [
    parse_group("Z/2 * Z/3"),
    parse_group("Z * Z"),
    parse_group("Z/3 * Z/4"),
    parse_group("Z/5 * Z"),
    parse_group("Z * Z/2 * Z/3"),
    parse_group("Z/6"),
]

# Faithful matrix images: Z/2*Z/3 into PSL(2,Z); Z*Z onto the Sanov subgroup of SL(2,Z).
_PSL_GENS = {0: np.array([[0, -1], [1, 0]], dtype=object),
             1: np.array([[0, -1], [1, 1]], dtype=object)}
_SANOV_GENS = {0: np.array([[1, 2], [0, 1]], dtype=object),
               1: np.array([[1, 0], [2, 1]], dtype=object)}


def _mat_power(m, e):
    out = np.identity(2, dtype=object)
    if e < 0:
        m = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=object)
        e = -e
    for _ in range(e):
        out = out.dot(m)
    return out


def matrix_image(u: Word):
    """Image in SL(2,Z) for the two groups that have a faithful one here."""
    orders = u.group.orders
    if orders == (2, 3):
        gens = _PSL_GENS
    elif orders == (0, 0):
        gens = _SANOV_GENS
    else:
        raise ValueError("no faithful matrix image for this group")
    out = np.identity(2, dtype=object)
    for i, e in u.syllables:
        out = out.dot(_mat_power(gens[i], e))
    return out


def matrix_is_identity(u: Word) -> bool:
    m = matrix_image(u)
    eye = np.identity(2, dtype=object)
    if u.group.orders == (2, 3):
        return bool((m == eye).all() or (m == -eye).all())
    return bool((m == eye).all())


def naive_reduce(raw, group: GroupSpec) -> tuple:
    """Letter-by-letter reduction on a stack of unit exponents; independent of words.reduce."""
    orders = group.orders
    stack = []  # list of [factor, exponent]
    for i, e in raw:
        step = 1 if e > 0 else -1
        for _ in range(abs(e)):
            if stack and stack[-1][0] == i:
                stack[-1][1] += step
                n = orders[i]
                if (n and stack[-1][1] % n == 0) or (not n and stack[-1][1] == 0):
                    stack.pop()
            else:
                stack.append([i, step])
    return tuple((i, e % orders[i] if orders[i] else e) for i, e in stack)


@st.composite
def raw_syllables(draw, group: GroupSpec, max_len: int = 8, max_exp: int = 4):
    n = len(group.orders)
    return draw(st.lists(
        st.tuples(st.integers(0, n - 1),
                  st.integers(-max_exp, max_exp).filter(lambda e: e != 0)),
        max_size=max_len))


@st.composite
def words(draw, group: GroupSpec = None, max_len: int = 8, max_exp: int = 4):
    if group is None:
        group = draw(st.sampled_from(GROUPS))
    return reduce(draw(raw_syllables(group, max_len, max_exp)), group)


@st.composite
def word_pairs(draw, max_len: int = 6):
    group = draw(st.sampled_from(GROUPS))
    return draw(words(group, max_len)), draw(words(group, max_len))


def rng(seed=0):
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
