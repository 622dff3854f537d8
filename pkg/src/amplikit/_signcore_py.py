"""Pure-Python twin of the compiled kernels in ``_signcore.pyx``.

Same byte encoding: 0 = zero, 1 = plus, 2 = minus.  Selected at import by
``amplikit.kernels`` when the extension is unavailable or when
``AMPLIKIT_PURE_PYTHON=1``.
"""


def var_bytes(s):
    count = -1
    last = 0
    for cur in s:
        if cur == 0:
            continue
        if last == 0:
            count = 0
        elif cur != last:
            count += 1
        last = cur
    return count


def varbar_bytes(s):
    n = len(s)
    total = 0
    prev = -1
    seen = False
    for i, cur in enumerate(s):
        if cur != 0:
            if not seen:
                seen = True
                total += i
            else:
                g = i - prev - 1
                differ = 1 if cur != s[prev] else 0
                # parity of the change count between fixed endpoints is
                # forced, so the maximum is g+1 when parities agree, else g
                if (g + 1) % 2 == differ:
                    total += g + 1
                else:
                    total += g
            prev = i
    if not seen:
        return n - 1
    total += n - 1 - prev
    return total


def compose_bytes(a, b):
    if len(a) != len(b):
        raise ValueError("length mismatch in compose")
    return bytes(x if x != 0 else y for x, y in zip(a, b))


def compose_closure(seeds):
    result = set(seeds)
    seedlist = sorted(result)
    frontier = list(result)
    while frontier:
        fresh = []
        for a in frontier:
            for s in seedlist:
                c = compose_bytes(a, s)
                if c not in result:
                    result.add(c)
                    fresh.append(c)
        frontier = fresh
    return result
