"""Weyl group words, reflections, reduced words, real roots and coroots.

Words are tuples of 1-based letters and act right to left:
``(i1, i2, i3)`` is ``s_i1 s_i2 s_i3``.  Roots are integer tuples in
simple-root coordinates.
"""

from collections import deque

from .cartan import bilinear_form
from .errors import NotRealRoot
from .linalg import q


def height(root):
    return sum(root)


def is_positive(root):
    return any(root) and all(k >= 0 for k in root)


def is_negative(root):
    return any(root) and all(k <= 0 for k in root)


def simple_root(l, i):
    """``alpha_i`` (1-based) as a coordinate tuple."""
    return tuple(1 if c == i - 1 else 0 for c in range(l))


def _check(gcm, i):
    if not 1 <= i <= gcm.size:
        raise IndexError(f"reflection index {i} out of range 1..{gcm.size}")


def reflect_root(gcm, i, x):
    """``s_i`` on root-lattice coordinates: ``x - <x, alpha_i^vee> alpha_i``."""
    _check(gcm, i)
    i -= 1
    pair = sum(xj * gcm[i, j] for j, xj in enumerate(x))
    out = list(x)
    out[i] -= pair
    return tuple(out)


def reflect_weight(real, gcm, i, weight):
    """``s_i`` on h* coordinates of the realization."""
    _check(gcm, i)
    coroot = real.simple_coroots[i - 1]
    root = real.simple_roots[i - 1]
    pair = real.pairing(weight, coroot)
    return tuple(w - pair * a for w, a in zip(weight, root))


def reflect_coweight(real, gcm, i, h):
    """``s_i`` on h coordinates: ``h - <alpha_i, h> alpha_i^vee``."""
    _check(gcm, i)
    coroot = real.simple_coroots[i - 1]
    pair = real.pairing(real.simple_roots[i - 1], h)
    return tuple(x - pair * c for x, c in zip(h, coroot))


def reflect_coroot(gcm, i, c):
    """``s_i`` on coroot-lattice coordinates: ``s_i(alpha_k^vee) = alpha_k^vee - a_ki alpha_i^vee``."""
    _check(gcm, i)
    i -= 1
    pair = sum(ck * gcm[k, i] for k, ck in enumerate(c))
    out = list(c)
    out[i] -= pair
    return tuple(out)


def reflect(gcm, i, x, real=None):
    """Reflect root coordinates (length l) or, given ``real``, h* coordinates."""
    if len(x) == gcm.size and real is None:
        return reflect_root(gcm, i, x)
    return reflect_weight(real, gcm, i, x)


def act(gcm, word, x, reflection=reflect_root):
    for i in reversed(word):
        x = reflection(gcm, i, x)
    return x


def reduce_word(gcm, word):
    """Reduced word for the same element, built letter by letter with the exchange condition.

    ``u s_j`` is shorter than ``u`` exactly when ``u(alpha_j) < 0``; the letter
    to delete is the one whose suffix sends ``alpha_j`` to a simple root.
    """
    l = gcm.size
    reduced = []
    for j in word:
        _check(gcm, j)
        root = simple_root(l, j)
        # walk the suffix of `reduced` from the right
        for pos in range(len(reduced) - 1, -1, -1):
            image = reflect_root(gcm, reduced[pos], root)
            if is_negative(image):
                del reduced[pos]
                break
            root = image
        else:
            reduced.append(j)
    return tuple(reduced)


def length(gcm, word):
    return len(reduce_word(gcm, word))


def braid_word(i, j, m):
    """Alternating word ``i j i ...`` of length m."""
    return tuple(i if k % 2 == 0 else j for k in range(m))


def real_roots_up_to(gcm, max_height):
    """Positive real roots of height <= H with their BFS-first witnesses.

    Returns a dict ``root -> (word, i)`` with ``root = word . alpha_i``, ordered by
    (height, lex).  Every step of a witness raises the height, so all
    intermediate roots are positive and no higher than the root itself.
    """
    l = gcm.size
    found = {}
    queue = deque()
    for i in range(1, l + 1):
        r = simple_root(l, i)
        found[r] = ((), i)
        queue.append(r)
    while queue:
        r = queue.popleft()
        word, i = found[r]
        for j in range(1, l + 1):
            s = reflect_root(gcm, j, r)
            if height(s) <= height(r) or height(s) > max_height or s in found:
                continue
            found[s] = ((j,) + word, i)
            queue.append(s)
    return dict(sorted(found.items(), key=lambda kv: (height(kv[0]), kv[0])))


def norm(gcm, root):
    return bilinear_form(gcm, root, root)


def coroot(gcm, alpha, witnesses=None):
    """Coroot of a positive real root in simple-coroot coordinates, ``w(alpha_i^vee)``."""
    alpha = tuple(alpha)
    if not is_positive(alpha) or norm(gcm, alpha) <= 0:
        raise NotRealRoot(f"{list(alpha)} is not a positive real root", root=list(alpha))
    if witnesses is None:
        witnesses = real_roots_up_to(gcm, height(alpha))
    if alpha not in witnesses:
        raise NotRealRoot(f"{list(alpha)} is not in the Weyl orbit of a simple root", root=list(alpha))
    word, i = witnesses[alpha]
    return act(gcm, word, simple_root(gcm.size, i), reflect_coroot)


def coroot_pairing(gcm, x, c):
    """``<x, h>`` for x in root coordinates and h in coroot coordinates."""
    return sum(xj * ck * gcm[k, j] for k, ck in enumerate(c) for j, xj in enumerate(x))


def check_coroot(gcm, alpha, c):
    """Defining identity ``<x, alpha^vee> = 2 (x, alpha) / (alpha, alpha)`` on simple roots."""
    nn = norm(gcm, alpha)
    for j in range(1, gcm.size + 1):
        x = simple_root(gcm.size, j)
        if q(coroot_pairing(gcm, x, c)) != 2 * bilinear_form(gcm, x, alpha) / nn:
            return False
    return True


def dominates(lam, mu):
    """Dominance order on root-coordinate differences: ``mu <= lam`` iff lam - mu in Q+."""
    return all(a - b >= 0 for a, b in zip(lam, mu))
