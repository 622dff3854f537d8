# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sign-vector kernels.

Sign vectors are packed as ``bytes`` with one byte per coordinate:
0 = zero, 1 = plus, 2 = minus.  These routines sit in the inner loops of
the 3^n enumerations and composition-closure fixpoints, which is where
virtually all combinatorial runtime goes; ``amplikit._signcore_py`` is the
drop-in pure-Python twin.
"""


def var_bytes(const unsigned char[:] s):
    """Number of sign changes, ignoring zeros; -1 for the zero vector."""
    cdef Py_ssize_t i, n = s.shape[0]
    cdef int last = 0, cur, count = -1
    for i in range(n):
        cur = s[i]
        if cur == 0:
            continue
        if last == 0:
            count = 0
        elif cur != last:
            count += 1
        last = cur
    return count


def varbar_bytes(const unsigned char[:] s):
    """Maximum of var over all fillings of the zero entries."""
    cdef Py_ssize_t i, n = s.shape[0], prev = -1
    cdef int total = 0, g, differ
    cdef bint seen = False
    for i in range(n):
        if s[i] != 0:
            if not seen:
                seen = True
                total += <int> i
            else:
                g = <int> (i - prev - 1)
                differ = 1 if s[i] != s[prev] else 0
                # parity of the change count between fixed endpoints is
                # forced, so the maximum is g+1 when parities agree, else g
                if (g + 1) % 2 == differ:
                    total += g + 1
                else:
                    total += g
            prev = i
    if not seen:
        return n - 1
    total += <int> (n - 1 - prev)
    return total


def compose_bytes(bytes a, bytes b):
    """Oriented-matroid composition: (a o b)_i = a_i if a_i != 0 else b_i."""
    cdef Py_ssize_t i, n = len(a)
    if len(b) != n:
        raise ValueError("length mismatch in compose")
    cdef const unsigned char* pa = a
    cdef const unsigned char* pb = b
    cdef bytearray out = bytearray(n)
    cdef unsigned char* po = out
    for i in range(n):
        po[i] = pa[i] if pa[i] != 0 else pb[i]
    return bytes(out)


def compose_closure(seeds):
    """Close a set of packed sign vectors under composition.

    Compositions are associative, so composing worklist elements with the
    seeds on the right reaches every iterated composite.
    """
    cdef set result = set(seeds)
    cdef list seedlist = sorted(result)
    cdef list frontier = list(result)
    cdef list fresh
    cdef bytes a, s, c
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
