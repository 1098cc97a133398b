"""Independent derivation checker.

Deliberately self-contained: it re-implements inversion and reduction on
plain lists instead of importing the prover, so a prover bug cannot vouch
for itself.
"""


def _inv(word):
    return [-x for x in word[::-1]]


def _reduce(word):
    stack = []
    for x in word:
        if stack and stack[-1] + x == 0:
            stack.pop()
        else:
            stack.append(x)
    while len(stack) >= 2 and stack[0] + stack[-1] == 0:
        stack = stack[1:-1]
    return stack


def check_derivation(relators, word, steps) -> bool:
    """Replay ``steps`` from ``word``; True iff every step is legal and the
    final word is empty."""
    rels = [list(r) for r in relators]
    current = _reduce(list(word))
    for step in steps:
        rot, ri, sign, shift = step.rotate, step.relator, step.sign, step.shift
        if not (0 <= ri < len(rels)) or sign not in (1, -1):
            return False
        base = rels[ri] if sign == 1 else _inv(rels[ri])
        if not base or not (0 <= shift < len(base)):
            return False
        if not current or not (0 <= rot < len(current)):
            return False
        current = current[rot:] + current[:rot]
        current = _reduce(base[shift:] + base[:shift] + current)
    return not current
