"""Hot inner loops, each in a numba flavour and a pure-numpy flavour.

The public names (``cayley_bfs``, ``fill_table``, ``gf2_rref``,
``local_snf``) point at the numba versions unless ``SCHURKIT_DISABLE_JIT``
is set. Both flavours are importable as ``*_numba`` / ``*_numpy`` so tests
and ``benchmarks/bench_kernels.py`` can compare them directly.
"""
import numpy as np

from ._jit import USE_NUMBA, njit

__all__ = [
    "USE_NUMBA",
    "cayley_bfs",
    "fill_table",
    "gf2_rref",
    "local_snf",
    "pack_gf2",
    "unpack_gf2",
    "warmup",
]

# Moduli at or above this go through the object-dtype numpy path.
INT64_MODULUS_LIMIT = 1 << 31


# --------------------------------------------------------------------------
# Breadth-first search over a right Cayley graph
# --------------------------------------------------------------------------

@njit
def cayley_bfs_numba(right, root):
    n, k = right.shape
    parent = np.full(n, -1, np.int64)
    pgen = np.full(n, -1, np.int64)
    seen = np.zeros(n, np.bool_)
    order = np.empty(n, np.int64)
    order[0] = root
    seen[root] = True
    head = 0
    tail = 1
    while head < tail:
        x = order[head]
        head += 1
        for j in range(k):
            y = right[x, j]
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                pgen[y] = j
                order[tail] = y
                tail += 1
    return order[:tail].copy(), parent, pgen


def cayley_bfs_numpy(right, root):
    right = np.asarray(right)
    n, k = right.shape
    parent = np.full(n, -1, np.int64)
    pgen = np.full(n, -1, np.int64)
    seen = np.zeros(n, bool)
    seen[root] = True
    chunks = [np.array([root], np.int64)]
    frontier = chunks[0]
    while frontier.size and k:
        cand = right[frontier].reshape(-1)
        fresh = ~seen[cand]
        if not fresh.any():
            break
        pos = np.flatnonzero(fresh)
        vals, first = np.unique(cand[pos], return_index=True)
        first = pos[first]
        first.sort()
        new = cand[first]
        seen[new] = True
        parent[new] = frontier[first // k]
        pgen[new] = first % k
        chunks.append(new.astype(np.int64))
        frontier = chunks[-1]
    return np.concatenate(chunks), parent, pgen


# --------------------------------------------------------------------------
# Full multiplication table from a BFS tree
# --------------------------------------------------------------------------

@njit
def _fill_table_numba(cols, order, parent, pgen):
    # row x walks the BFS tree: x * y = (x * parent(y)) * gen(y)
    n = cols.shape[1]
    table = np.empty((n, n), np.int32)
    root = order[0]
    for x in range(n):
        row = table[x]
        row[root] = x
        for idx in range(1, order.shape[0]):
            y = order[idx]
            row[y] = cols[pgen[y], row[parent[y]]]
    return table


def fill_table_numba(right, order, parent, pgen):
    cols = np.ascontiguousarray(np.asarray(right).T, dtype=np.int32)
    return _fill_table_numba(cols, order, parent, pgen)


def fill_table_numpy(right, order, parent, pgen):
    right = np.asarray(right, dtype=np.int64)
    n = right.shape[0]
    tt = np.empty((n, n), np.int32)
    tt[order[0]] = np.arange(n)
    for y in order[1:]:
        tt[y] = right[tt[parent[y]], pgen[y]]
    return np.ascontiguousarray(tt.T)


# --------------------------------------------------------------------------
# GF(2) reduced row echelon form on bit-packed rows
# --------------------------------------------------------------------------

def pack_gf2(dense):
    """Pack a 0/1 matrix into rows of uint64 words, bit ``c % 64`` of word ``c // 64``."""
    dense = np.asarray(dense, dtype=np.uint8) & 1
    rows, cols = dense.shape
    words = max(1, (cols + 63) // 64)
    padded = np.zeros((rows, words * 64), np.uint8)
    padded[:, :cols] = dense
    bits = np.packbits(padded.reshape(rows, words, 64), axis=2, bitorder="little")
    return np.ascontiguousarray(bits).view(np.uint64).reshape(rows, words).copy()


def unpack_gf2(packed, cols):
    packed = np.ascontiguousarray(packed, dtype=np.uint64)
    rows = packed.shape[0]
    if rows == 0:
        return np.zeros((0, cols), np.int64)
    bits = np.unpackbits(packed.view(np.uint8).reshape(rows, -1), axis=1, bitorder="little")
    return bits[:, :cols].astype(np.int64)


@njit
def gf2_rref_numba(m, ncols):
    rows, words = m.shape
    pivots = np.empty(min(rows, ncols), np.int64)
    r = 0
    one = np.uint64(1)
    for c in range(ncols):
        if r == rows:
            break
        w = c // 64
        bit = one << np.uint64(c % 64)
        piv = -1
        for i in range(r, rows):
            if m[i, w] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for t in range(words):
                tmp = m[r, t]
                m[r, t] = m[piv, t]
                m[piv, t] = tmp
        for i in range(rows):
            if i != r and (m[i, w] & bit):
                for t in range(w, words):
                    m[i, t] ^= m[r, t]
        pivots[r] = c
        r += 1
    return pivots[:r].copy()


def gf2_rref_numpy(m, ncols):
    rows, words = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        w, bit = divmod(c, 64)
        bit = np.uint64(1) << np.uint64(bit)
        col = (m[r:, w] & bit) != 0
        hit = np.flatnonzero(col)
        if hit.size == 0:
            continue
        piv = r + hit[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        mask = (m[:, w] & bit) != 0
        mask[r] = False
        if mask.any():
            m[mask, w:] ^= m[r, w:]
        pivots.append(c)
        r += 1
    return np.array(pivots, np.int64)


# --------------------------------------------------------------------------
# Smith form over the local ring Z/p^k
# --------------------------------------------------------------------------

@njit
def _val(x, p, k):
    if x == 0:
        return k
    v = 0
    while x % p == 0 and v < k:
        x //= p
        v += 1
    return v


@njit
def _inv_mod(a, q):
    t, newt = 0, 1
    r, newr = q, a % q
    while newr != 0:
        quo = r // newr
        t, newt = newt, t - quo * newt
        r, newr = newr, r - quo * newr
    return t % q


@njit
def local_snf_numba(a, p, k, v, vinv, rhs):
    rows, cols = a.shape
    q = 1
    for _ in range(k):
        q *= p
    ncol_rhs = rhs.shape[1]
    vals = np.empty(min(rows, cols), np.int64)
    t = 0
    while t < rows and t < cols:
        best = k
        bi = -1
        bj = -1
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i, j]
                if x != 0:
                    vx = _val(x, p, k)
                    if vx < best:
                        best = vx
                        bi = i
                        bj = j
                        if vx == 0:
                            break
            if best == 0:
                break
        if bi < 0:
            break
        if bi != t:
            for j in range(cols):
                tmp = a[t, j]
                a[t, j] = a[bi, j]
                a[bi, j] = tmp
            for j in range(ncol_rhs):
                tmp = rhs[t, j]
                rhs[t, j] = rhs[bi, j]
                rhs[bi, j] = tmp
        if bj != t:
            for i in range(rows):
                tmp = a[i, t]
                a[i, t] = a[i, bj]
                a[i, bj] = tmp
            for i in range(cols):
                tmp = v[i, t]
                v[i, t] = v[i, bj]
                v[i, bj] = tmp
                tmp = vinv[t, i]
                vinv[t, i] = vinv[bj, i]
                vinv[bj, i] = tmp
        pv = 1
        for _ in range(best):
            pv *= p
        unit = a[t, t] // pv
        uinv = _inv_mod(unit, q)
        for j in range(t, cols):
            a[t, j] = (a[t, j] * uinv) % q
        for j in range(ncol_rhs):
            rhs[t, j] = (rhs[t, j] * uinv) % q
        for i in range(t + 1, rows):
            if a[i, t] != 0:
                c = a[i, t] // pv
                for j in range(t, cols):
                    a[i, j] = (a[i, j] - c * a[t, j]) % q
                for j in range(ncol_rhs):
                    rhs[i, j] = (rhs[i, j] - c * rhs[t, j]) % q
        for j in range(t + 1, cols):
            if a[t, j] != 0:
                c = a[t, j] // pv
                a[t, j] = 0
                for i in range(cols):
                    v[i, j] = (v[i, j] - c * v[i, t]) % q
                    vinv[t, i] = (vinv[t, i] + c * vinv[j, i]) % q
        vals[t] = best
        t += 1
    return vals[:t].copy()


def _valuations(block, p, k):
    out = np.full(block.shape, k, dtype=np.int64)
    x = block.copy()
    live = x != 0
    out[live] = 0
    for _ in range(k):
        div = live & (x % p == 0)
        if not div.any():
            break
        out[div] += 1
        x[div] //= p
        live = div
    return out


def local_snf_numpy(a, p, k, v, vinv, rhs):
    rows, cols = a.shape
    q = p ** k
    vals = []
    t = 0
    while t < rows and t < cols:
        sub = a[t:, t:]
        vv = _valuations(sub, p, k)
        flat = int(np.argmin(vv))
        best = int(vv.reshape(-1)[flat])
        if best >= k:
            break
        bi, bj = divmod(flat, cols - t)
        bi += t
        bj += t
        if bi != t:
            a[[t, bi]] = a[[bi, t]]
            rhs[[t, bi]] = rhs[[bi, t]]
        if bj != t:
            a[:, [t, bj]] = a[:, [bj, t]]
            v[:, [t, bj]] = v[:, [bj, t]]
            vinv[[t, bj]] = vinv[[bj, t]]
        pv = p ** best
        uinv = pow(int(a[t, t]) // pv, -1, q)
        a[t, t:] = (a[t, t:] * uinv) % q
        rhs[t] = (rhs[t] * uinv) % q
        below = np.flatnonzero(a[t + 1:, t] != 0) + t + 1
        if below.size:
            c = (a[below, t] // pv)[:, None]
            a[below, t:] = (a[below, t:] - c * a[t, t:]) % q
            rhs[below] = (rhs[below] - c * rhs[t]) % q
        right = np.flatnonzero(a[t, t + 1:] != 0) + t + 1
        if right.size:
            c = a[t, right] // pv
            a[t, right] = 0
            v[:, right] = (v[:, right] - v[:, [t]] * c[None, :]) % q
            vinv[t] = (vinv[t] + ((c[:, None] * vinv[right]) % q).sum(axis=0)) % q
        vals.append(best)
        t += 1
    return np.array(vals, dtype=np.int64)


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------

def cayley_bfs(right, root):
    """BFS over ``x -> right[x, j]`` from ``root``.

    Returns ``(order, parent, pgen)``: discovery order, and for every reached
    non-root ``y`` the pair with ``y = right[parent[y], pgen[y]]``.
    """
    right = np.ascontiguousarray(right, dtype=np.int64)
    if USE_NUMBA:
        return cayley_bfs_numba(right, int(root))
    return cayley_bfs_numpy(right, int(root))


def fill_table(right, order, parent, pgen):
    """Multiplication table ``T[x, y] = x*y`` from a spanning BFS tree."""
    if USE_NUMBA:
        return fill_table_numba(right, order, parent, pgen)
    return fill_table_numpy(right, order, parent, pgen)


def gf2_rref(packed, ncols):
    """In-place reduced row echelon form of a packed GF(2) matrix; returns pivot columns."""
    if USE_NUMBA:
        return gf2_rref_numba(packed, ncols)
    return gf2_rref_numpy(packed, ncols)


def local_snf(a, p, k, v, vinv, rhs):
    """In-place Smith reduction of ``a`` over Z/p^k.

    ``a`` ends diagonal with entries ``p**vals[i]``; ``v``/``vinv`` accumulate
    the column transform and its inverse, ``rhs`` receives the row transform.
    Entries must already lie in ``[0, p**k)``.
    """
    if USE_NUMBA and p ** k < INT64_MODULUS_LIMIT and a.dtype == np.int64:
        return local_snf_numba(a, p, k, v, vinv, rhs)
    return local_snf_numpy(a, p, k, v, vinv, rhs)


def warmup():
    """Trigger JIT compilation so later timings measure the algorithms only."""
    right = np.array([[1], [0]], np.int64)
    order, parent, pgen = cayley_bfs(right, 0)
    fill_table(right, order, parent, pgen)
    gf2_rref(pack_gf2(np.eye(2, dtype=np.uint8)), 2)
    a = np.array([[2, 1], [0, 3]], np.int64)
    local_snf(a, 2, 2, np.eye(2, dtype=np.int64), np.eye(2, dtype=np.int64), np.eye(2, dtype=np.int64))
