# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled sweep kernels over flat field tables.

Implements the same three entry points as the pure backend (`_kernels_py`),
with identical argument and result layouts; that module's docstring is the
protocol reference (mode codes, result layouts). Differences here are purely
operational:

  * the field tables must support the buffer protocol as contiguous C ints
    (``array('i')`` as produced by the table builder);
  * ``keys`` must be sorted ascending (binary search is used);
  * modes that encode factorization-type keys reject n > 16 up front, since
    the key radix (n+1)**(n-1) overflows 64-bit integers beyond that;
  * coefficient-vector widths are capped at 64 digits.

Each call allocates one private scratch arena, so concurrent calls from
multiple threads are independent, and the sweep loop itself runs with the
GIL released.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

MODE_PRIME = 0
MODE_FROB = 1
MODE_TYPE = 2
MODE_MOBIUS = 3
MODE_CHOWLA = 4
MODE_BATEMAN = 5
MODE_AP = 6

cdef enum:
    M_PRIME = 0
    M_FROB = 1
    M_TYPE = 2
    M_MOBIUS = 3
    M_CHOWLA = 4
    M_BATEMAN = 5
    M_AP = 6

cdef enum:
    N_SLOTS = 18
    MAX_WIDTH = 64
    MAX_KEYED_DEGREE = 16


cdef struct Ctx:
    int q
    int p
    int nu
    int chi_valid
    int W
    int* mul
    int* add
    int* inv
    int* neg
    int* chi
    long long* radixpow
    long long* ones
    # scratch slots, each ctx.W ints wide
    int* h        # assembled interval point / monic sweep polynomial
    int* hh       # square of h
    int* F        # specialized polynomial under test
    int* S        # running result inside powq
    int* work     # raw products before reduction
    int* fp       # derivative
    int* cbuf     # squarefree decomposition state
    int* wbuf
    int* ybuf
    int* zbuf
    int* u        # Frobenius power of t
    int* base     # square-and-multiply base inside powq
    int* tmp      # distinct-degree working copy
    int* diff     # u - t handed to gcd
    int* gout     # gcd output
    int* divout   # quotient output
    int* acopy    # consumable copies inside gcd/div/resultant
    int* bcopy


# ---------------------------------------------------------------------------
# polynomial primitives on (int* codes, int length) pairs
# ---------------------------------------------------------------------------

cdef inline int _trim(int* c, int l) noexcept nogil:
    while l > 0 and c[l - 1] == 0:
        l -= 1
    return l


cdef int _poly_mul(Ctx* ctx, const int* a, int la, const int* b, int lb,
                   int* out) noexcept nogil:
    cdef int q = ctx.q
    cdef int* mul = ctx.mul
    cdef int* add = ctx.add
    cdef int i, j, x, y, bx, lo_
    if la == 0 or lb == 0:
        return 0
    lo_ = la + lb - 1
    memset(out, 0, lo_ * sizeof(int))
    for i in range(la):
        x = a[i]
        if x:
            bx = x * q
            for j in range(lb):
                y = b[j]
                if y:
                    out[i + j] = add[out[i + j] * q + mul[bx + y]]
    return lo_


cdef int _poly_add_into(Ctx* ctx, int* dst, const int* a, int la,
                        const int* b, int lb) noexcept nogil:
    cdef int q = ctx.q
    cdef int* add = ctx.add
    cdef int j, y, l
    if la < lb:
        a, b = b, a
        la, lb = lb, la
    if la:
        memcpy(dst, a, la * sizeof(int))
    l = la
    for j in range(lb):
        y = b[j]
        if y:
            dst[j] = add[dst[j] * q + y]
    return _trim(dst, l)


cdef int _poly_mod(Ctx* ctx, int* r, int lr, const int* b, int lb) noexcept nogil:
    """Remainder of r by nonzero b, in place; returns the new length."""
    cdef int q = ctx.q
    cdef int* mul = ctx.mul
    cdef int* add = ctx.add
    cdef int db = lb - 1
    cdef int binv, c, nc, shift, bx, j, y
    if db == 0:
        return 0
    binv = ctx.inv[b[lb - 1]]
    lr = _trim(r, lr)
    while lr - 1 >= db:
        c = mul[r[lr - 1] * q + binv]
        nc = ctx.neg[c]
        shift = lr - 1 - db
        bx = nc * q
        for j in range(db):
            y = b[j]
            if y:
                r[shift + j] = add[r[shift + j] * q + mul[bx + y]]
        lr = _trim(r, lr - 1)
    return lr


cdef int _poly_div(Ctx* ctx, const int* a, int la, const int* b, int lb,
                   int* out) noexcept nogil:
    """Quotient of a by nonzero b into out; a and b are left untouched."""
    cdef int q = ctx.q
    cdef int* mul = ctx.mul
    cdef int* add = ctx.add
    cdef int* w = ctx.acopy
    cdef int db = lb - 1
    cdef int binv, c, nc, shift, bx, j, y, qlen
    binv = ctx.inv[b[lb - 1]]
    if db == 0:
        for j in range(la):
            out[j] = mul[a[j] * q + binv]
        return _trim(out, la)
    if la:
        memcpy(w, a, la * sizeof(int))
    la = _trim(w, la)
    if la - 1 < db:
        return 0
    qlen = la - db
    memset(out, 0, qlen * sizeof(int))
    while la - 1 >= db:
        c = mul[w[la - 1] * q + binv]
        shift = la - 1 - db
        out[shift] = c
        nc = ctx.neg[c]
        bx = nc * q
        for j in range(db):
            y = b[j]
            if y:
                w[shift + j] = add[w[shift + j] * q + mul[bx + y]]
        la = _trim(w, la - 1)
    return qlen


cdef int _poly_gcd(Ctx* ctx, const int* a, int la, const int* b, int lb) noexcept nogil:
    """Monic gcd of a and b into ctx.gout; inputs are left untouched."""
    cdef int q = ctx.q
    cdef int* mul = ctx.mul
    cdef int* pa = ctx.acopy
    cdef int* pb = ctx.bcopy
    cdef int* pt
    cdef int lt, ilc, j
    if la:
        memcpy(pa, a, la * sizeof(int))
    if lb:
        memcpy(pb, b, lb * sizeof(int))
    la = _trim(pa, la)
    lb = _trim(pb, lb)
    while lb:
        la = _poly_mod(ctx, pa, la, pb, lb)
        pt = pa; pa = pb; pb = pt
        lt = la; la = lb; lb = lt
    if la and pa[la - 1] != 1:
        ilc = ctx.inv[pa[la - 1]]
        for j in range(la):
            ctx.gout[j] = mul[pa[j] * q + ilc]
    elif la:
        memcpy(ctx.gout, pa, la * sizeof(int))
    return la


cdef int _deriv(Ctx* ctx, const int* f, int lf) noexcept nogil:
    """Formal derivative of f into ctx.fp; returns its length."""
    cdef int q = ctx.q
    cdef int p = ctx.p
    cdef int* mul = ctx.mul
    cdef int i, s
    for i in range(1, lf):
        s = i % p
        ctx.fp[i - 1] = mul[f[i] * q + s] if s else 0
    return _trim(ctx.fp, lf - 1 if lf > 0 else 0)


cdef inline int _pow_code(Ctx* ctx, int c, int e) noexcept nogil:
    cdef int q = ctx.q
    cdef int* mul = ctx.mul
    cdef int r = 1
    while e:
        if e & 1:
            r = mul[r * q + c]
        c = mul[c * q + c]
        e >>= 1
    return r


cdef int _powq_mod(Ctx* ctx, int* u, int lu, const int* f, int lf) noexcept nogil:
    """Raise u to the q-th power mod f, in place; returns the new length."""
    cdef int* S = ctx.S
    cdef int* base = ctx.base
    cdef int* work = ctx.work
    cdef int e = ctx.q
    cdef int ls = -1
    cdef int lb = lu
    cdef int lw
    if lu:
        memcpy(base, u, lu * sizeof(int))
    while e:
        if e & 1:
            if ls < 0:
                if lb:
                    memcpy(S, base, lb * sizeof(int))
                ls = lb
            else:
                lw = _poly_mul(ctx, S, ls, base, lb, work)
                lw = _poly_mod(ctx, work, lw, f, lf)
                if lw:
                    memcpy(S, work, lw * sizeof(int))
                ls = lw
        e >>= 1
        if e:
            lw = _poly_mul(ctx, base, lb, base, lb, work)
            lw = _poly_mod(ctx, work, lw, f, lf)
            if lw:
                memcpy(base, work, lw * sizeof(int))
            lb = lw
    if ls:
        memcpy(u, S, ls * sizeof(int))
    return ls


cdef int _sub_x_inplace(Ctx* ctx, int* d, int l) noexcept nogil:
    """d := d - t, trimmed; d must be at least 2 wide."""
    while l < 2:
        d[l] = 0
        l += 1
    d[1] = ctx.add[d[1] * ctx.q + ctx.neg[1]]
    return _trim(d, l)


cdef int _is_irreducible(Ctx* ctx, const int* f, int lf) noexcept nogil:
    """Rabin test for monic f of degree >= 1; f is left untouched."""
    cdef int n = lf - 1
    cdef int* u = ctx.u
    cdef int* diff = ctx.diff
    cdef unsigned long long mask = 0
    cdef int nn, d, i, lu, ld, lg
    if n == 1:
        return 1
    nn = n
    d = 2
    while d * d <= nn:
        if nn % d == 0:
            mask |= (<unsigned long long>1) << (n // d)
            while nn % d == 0:
                nn //= d
        d += 1
    if nn > 1:
        mask |= (<unsigned long long>1) << (n // nn)
    u[0] = 0
    u[1] = 1
    lu = 2
    for i in range(1, n + 1):
        lu = _powq_mod(ctx, u, lu, f, lf)
        if (mask >> i) & 1:
            if lu:
                memcpy(diff, u, lu * sizeof(int))
            ld = _sub_x_inplace(ctx, diff, lu)
            lg = _poly_gcd(ctx, f, lf, diff, ld)
            if lg != 1:
                return 0
    return lu == 2 and u[0] == 0 and u[1] == 1


cdef int _pth_root_inplace(Ctx* ctx, int* f, int lf) noexcept nogil:
    """p-th root of f with zero derivative, in place; returns the new length."""
    cdef int p = ctx.p
    cdef int e = ctx.q // p
    cdef int newlen = (lf - 1) // p + 1
    cdef int i, c
    for i in range(newlen):
        c = f[p * i]
        f[i] = _pow_code(ctx, c, e) if c else 0
    return newlen


cdef long long _ddf_key(Ctx* ctx, const int* g, int lg, long long mult,
                        const long long* radix) noexcept nogil:
    """Weighted distinct-degree census of squarefree monic g.

    Returns sum over irreducible factors of mult * radix[deg - 1]; g is left
    untouched (a copy is consumed).
    """
    cdef int* f = ctx.tmp
    cdef int* u = ctx.u
    cdef int* diff = ctx.diff
    cdef int lf, lu, ld, lh, lq, d, n
    cdef long long acc = 0
    if lg:
        memcpy(f, g, lg * sizeof(int))
    lf = lg
    n = lf - 1
    if n == 0:
        return 0
    if n == 1:
        return mult * radix[0]
    u[0] = 0
    u[1] = 1
    lu = 2
    d = 0
    while lf - 1 >= 2 * (d + 1):
        d += 1
        lu = _powq_mod(ctx, u, lu, f, lf)
        if lu:
            memcpy(diff, u, lu * sizeof(int))
        ld = _sub_x_inplace(ctx, diff, lu)
        lh = _poly_gcd(ctx, f, lf, diff, ld)
        if lh != 1:
            acc += mult * <long long>((lh - 1) // d) * radix[d - 1]
            lq = _poly_div(ctx, f, lf, ctx.gout, lh, ctx.divout)
            memcpy(f, ctx.divout, lq * sizeof(int))
            lf = lq
            if lf - 1 == 0:
                return acc
            lu = _poly_mod(ctx, u, lu, f, lf)
    if lf - 1 > 0:
        acc += mult * radix[lf - 2]
    return acc


cdef long long _type_key(Ctx* ctx, int* f, int lf, int* sf_out) noexcept nogil:
    """Factorization-type key of monic f of degree >= 1; f is consumed.

    Squarefree decomposition runs iteratively: inseparable layers restart the
    loop on the p-th root with the multiplicity scale bumped by p.
    """
    cdef int* c = ctx.cbuf
    cdef int* w = ctx.wbuf
    cdef int* y = ctx.ybuf
    cdef int* z = ctx.zbuf
    cdef int lc, lw, ly, lz, lfp, i
    cdef long long scale = 1
    cdef long long key = 0
    sf_out[0] = 1
    if lf <= 1:
        return 0
    while True:
        lfp = _deriv(ctx, f, lf)
        if lfp == 0:
            lf = _pth_root_inplace(ctx, f, lf)
            scale *= ctx.p
            continue
        lc = _poly_gcd(ctx, f, lf, ctx.fp, lfp)
        memcpy(c, ctx.gout, lc * sizeof(int))
        lw = _poly_div(ctx, f, lf, c, lc, ctx.divout)
        memcpy(w, ctx.divout, lw * sizeof(int))
        i = 1
        while lw > 1:
            ly = _poly_gcd(ctx, w, lw, c, lc)
            memcpy(y, ctx.gout, ly * sizeof(int))
            lz = _poly_div(ctx, w, lw, y, ly, ctx.divout)
            memcpy(z, ctx.divout, lz * sizeof(int))
            if lz > 1:
                if i * scale > 1:
                    sf_out[0] = 0
                key += _ddf_key(ctx, z, lz, i * scale, ctx.radixpow)
            memcpy(w, y, ly * sizeof(int))
            lw = ly
            lc = _poly_div(ctx, c, lc, y, ly, ctx.divout)
            memcpy(c, ctx.divout, lc * sizeof(int))
            i += 1
        if lc == 1:
            return key
        lc = _pth_root_inplace(ctx, c, lc)
        memcpy(f, c, lc * sizeof(int))
        lf = lc
        scale *= ctx.p


cdef int _resultant(Ctx* ctx, const int* a, int la, const int* b, int lb) noexcept nogil:
    """Resultant of nonzero a, b with deg a >= 1; inputs are left untouched."""
    cdef int q = ctx.q
    cdef int* mul = ctx.mul
    cdef int* pa = ctx.acopy
    cdef int* pb = ctx.bcopy
    cdef int* pt
    cdef int acc = 1
    cdef int negate = 0
    cdef int da, db, lr
    memcpy(pa, a, la * sizeof(int))
    memcpy(pb, b, lb * sizeof(int))
    while lb - 1 > 0:
        da = la - 1
        db = lb - 1
        lr = _poly_mod(ctx, pa, la, pb, lb)
        if lr == 0:
            return 0
        if da > 0 and (da * db) & 1:
            negate ^= 1
        acc = mul[acc * q + _pow_code(ctx, pb[lb - 1], da - (lr - 1))]
        pt = pa; pa = pb; pb = pt
        la = lb
        lb = lr
    acc = mul[acc * q + _pow_code(ctx, pb[0], la - 1)]
    if negate:
        acc = ctx.neg[acc]
    return acc


cdef int _mobius(Ctx* ctx, const int* f, int lf) noexcept nogil:
    """Mobius value of monic f with deg f >= 1; f is left untouched."""
    cdef int lfp, n, r, v, lg
    cdef long long total
    lfp = _deriv(ctx, f, lf)
    if lfp == 0:
        return 0
    if ctx.chi_valid:
        n = lf - 1
        r = _resultant(ctx, f, lf, ctx.fp, lfp)
        if r == 0:
            return 0
        if ((n * (n - 1)) // 2) & 1:
            r = ctx.neg[r]
        v = ctx.chi[r]
        return v if n % 2 == 0 else -v
    lg = _poly_gcd(ctx, f, lf, ctx.fp, lfp)
    if lg != 1:
        return 0
    total = _ddf_key(ctx, f, lf, 1, ctx.ones)
    return -1 if total & 1 else 1


cdef long long _find_key(const long long* keys, int nk, long long key) noexcept nogil:
    cdef int lo = 0
    cdef int hi = nk
    cdef int mid
    while lo < hi:
        mid = (lo + hi) // 2
        if keys[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    if lo < nk and keys[lo] == key:
        return lo
    return -1


# ---------------------------------------------------------------------------
# driver setup shared by the entry points
# ---------------------------------------------------------------------------

cdef class _Arena:
    """Owns the malloc'd scratch memory for one kernel call."""
    cdef int* ints
    cdef long long* lls

    def __cinit__(self, size_t n_ints, size_t n_lls):
        self.ints = <int*>malloc(n_ints * sizeof(int))
        self.lls = <long long*>malloc(n_lls * sizeof(long long))
        if self.ints == NULL or self.lls == NULL:
            raise MemoryError("kernel arena allocation failed")
        memset(self.ints, 0, n_ints * sizeof(int))
        memset(self.lls, 0, n_lls * sizeof(long long))

    def __dealloc__(self):
        if self.ints != NULL:
            free(self.ints)
        if self.lls != NULL:
            free(self.lls)


cdef void _bind_slots(Ctx* ctx, int* arena) noexcept:
    cdef int W = ctx.W
    ctx.h = arena
    ctx.hh = arena + W
    ctx.F = arena + 2 * W
    ctx.S = arena + 3 * W
    ctx.work = arena + 4 * W
    ctx.fp = arena + 5 * W
    ctx.cbuf = arena + 6 * W
    ctx.wbuf = arena + 7 * W
    ctx.ybuf = arena + 8 * W
    ctx.zbuf = arena + 9 * W
    ctx.u = arena + 10 * W
    ctx.base = arena + 11 * W
    ctx.tmp = arena + 12 * W
    ctx.diff = arena + 13 * W
    ctx.gout = arena + 14 * W
    ctx.divout = arena + 15 * W
    ctx.acopy = arena + 16 * W
    ctx.bcopy = arena + 17 * W


cdef int _copy_poly(object codes, int* dst, int cap) except -1:
    cdef int l = len(codes)
    cdef int j
    if l > cap:
        raise ValueError(f"coefficient vector of length {l} exceeds kernel "
                         f"capacity {cap}")
    for j in range(l):
        dst[j] = codes[j]
    return l


cdef long long _loop_count(object lo, object hi) except -1:
    count = hi - lo
    if count < 0:
        count = 0
    if count > (1 << 62):
        raise ValueError("sweep range too large for the compiled kernel")
    return count


cdef void _fill_digits(object lo, int q, int width, int* digits) except *:
    cdef int j
    rest = lo
    for j in range(width):
        digits[j] = rest % q
        rest //= q


cdef void _fill_radix(Ctx* ctx, int n, int need_keys):
    cdef int k
    for k in range(MAX_WIDTH):
        ctx.ones[k] = 1
        ctx.radixpow[k] = 1
    if need_keys:
        for k in range(1, max(n, 1)):
            ctx.radixpow[k] = ctx.radixpow[k - 1] * (n + 1)


# ---------------------------------------------------------------------------
# entry points (protocol-identical to _kernels_py)
# ---------------------------------------------------------------------------

def interval_sweep(int mode, int q, int p, int nu,
                   const int[::1] mul, const int[::1] add,
                   const int[::1] inv, const int[::1] neg,
                   const int[::1] chi, int chi_valid,
                   center, int m, fs, gs, eps, int n, lo, hi, keys):
    """Sweep specializations f_i + g_i*(center + l)^2 for indices [lo, hi)."""
    cdef int width = m + 1
    cdef int r = len(fs)
    cdef int nk = len(keys)
    cdef int W, lc, i, j, need_keys
    cdef long long cnt
    cdef Ctx ctx

    if mode not in (M_PRIME, M_FROB, M_MOBIUS, M_CHOWLA, M_BATEMAN):
        raise ValueError(f"unsupported interval mode {mode}")
    if width > MAX_WIDTH or n > MAX_WIDTH or n < 0:
        raise ValueError("degree or interval width exceeds kernel capacity")
    if r < 1 and mode in (M_PRIME, M_FROB, M_MOBIUS):
        raise ValueError("single-family interval modes need one (f, g) pair")
    need_keys = mode == M_PRIME or mode == M_FROB
    if need_keys and n > MAX_KEYED_DEGREE:
        raise ValueError(f"factorization-type keys overflow beyond degree "
                         f"{MAX_KEYED_DEGREE}; use the object-layer route")
    cnt = _loop_count(lo, hi)

    W = 2 * n + 8
    ctx.q = q; ctx.p = p; ctx.nu = nu; ctx.chi_valid = chi_valid; ctx.W = W
    ctx.mul = <int*>&mul[0]; ctx.add = <int*>&add[0]
    ctx.inv = <int*>&inv[0]; ctx.neg = <int*>&neg[0]; ctx.chi = <int*>&chi[0]

    # arena: named slots, then center, then r slots for fs and r for gs,
    # then r ints of eps flags
    cdef _Arena arena = _Arena((N_SLOTS + 1 + 2 * r) * W + max(r, 1),
                               2 * MAX_WIDTH + nk + nk + 1 + r + 1)
    _bind_slots(&ctx, arena.ints)
    cdef int* centerbuf = arena.ints + N_SLOTS * W
    cdef int* fsflat = centerbuf + W
    cdef int* gsflat = fsflat + r * W
    cdef int* epsbuf = gsflat + r * W
    ctx.radixpow = arena.lls
    ctx.ones = arena.lls + MAX_WIDTH
    cdef long long* keybuf = arena.lls + 2 * MAX_WIDTH
    cdef long long* counts = keybuf + nk
    cdef long long* ind = counts + nk + 1

    lc = _copy_poly(center, centerbuf, W)
    cdef int* fslen = <int*>malloc(2 * max(r, 1) * sizeof(int))
    if fslen == NULL:
        raise MemoryError("kernel arena allocation failed")
    cdef int* gslen = fslen + max(r, 1)
    try:
        for i in range(r):
            fslen[i] = _copy_poly(fs[i], fsflat + i * W, W)
            gslen[i] = _copy_poly(gs[i], gsflat + i * W, W)
        for i in range(min(len(eps), r)):
            epsbuf[i] = eps[i]
        for i in range(nk):
            keybuf[i] = keys[i]
        _fill_radix(&ctx, n, need_keys)

        return _interval_run(&ctx, mode, centerbuf, lc, width, fsflat, fslen,
                             gsflat, gslen, epsbuf, r, n, lo, cnt, keybuf,
                             counts, ind, nk)
    finally:
        free(fslen)


cdef _interval_run(Ctx* ctx, int mode, const int* centerbuf, int lc, int width,
                   const int* fsflat, const int* fslen, const int* gsflat,
                   const int* gslen, const int* epsbuf, int r, int n,
                   object lo, long long cnt, const long long* keybuf,
                   long long* counts, long long* ind, int nk):
    cdef int digits[MAX_WIDTH]
    cdef int W = ctx.W
    cdef int q = ctx.q
    cdef int* addtbl = ctx.add
    cdef long long irr = 0, irr_by_type = 0, nsf = 0, acc = 0, conj = 0
    cdef long long bad_key = 0, step, key, idx
    cdef long long full_key = ctx.radixpow[n - 1] if n >= 1 else 0
    cdef int lh, lhh, lw_, lF, sf, j, i, dj, v, prod, allp
    _fill_digits(lo, q, width, digits)

    with nogil:
        for step in range(cnt):
            memcpy(ctx.h, centerbuf, lc * sizeof(int))
            lh = lc
            for j in range(width):
                dj = digits[j]
                if dj:
                    ctx.h[j] = addtbl[ctx.h[j] * q + dj]
            lhh = _poly_mul(ctx, ctx.h, lh, ctx.h, lh, ctx.hh)

            if mode == M_PRIME:
                lw_ = _poly_mul(ctx, gsflat, gslen[0], ctx.hh, lhh, ctx.work)
                lF = _poly_add_into(ctx, ctx.F, fsflat, fslen[0], ctx.work, lw_)
                if _is_irreducible(ctx, ctx.F, lF):
                    irr += 1
                key = _type_key(ctx, ctx.F, lF, &sf)
                if key == full_key:
                    irr_by_type += 1
            elif mode == M_FROB:
                lw_ = _poly_mul(ctx, gsflat, gslen[0], ctx.hh, lhh, ctx.work)
                lF = _poly_add_into(ctx, ctx.F, fsflat, fslen[0], ctx.work, lw_)
                key = _type_key(ctx, ctx.F, lF, &sf)
                if sf:
                    idx = _find_key(keybuf, nk, key)
                    if idx < 0:
                        bad_key += 1
                    else:
                        counts[idx] += 1
                else:
                    nsf += 1
            elif mode == M_MOBIUS:
                lw_ = _poly_mul(ctx, gsflat, gslen[0], ctx.hh, lhh, ctx.work)
                lF = _poly_add_into(ctx, ctx.F, fsflat, fslen[0], ctx.work, lw_)
                acc += _mobius(ctx, ctx.F, lF)
            elif mode == M_CHOWLA:
                prod = 1
                for i in range(r):
                    lw_ = _poly_mul(ctx, gsflat + i * W, gslen[i], ctx.hh, lhh,
                                    ctx.work)
                    lF = _poly_add_into(ctx, ctx.F, fsflat + i * W, fslen[i],
                                        ctx.work, lw_)
                    v = _mobius(ctx, ctx.F, lF)
                    if epsbuf[i] == 2:
                        v *= v
                    prod *= v
                    if prod == 0:
                        break
                acc += prod
            else:  # M_BATEMAN
                allp = 1
                for i in range(r):
                    lw_ = _poly_mul(ctx, gsflat + i * W, gslen[i], ctx.hh, lhh,
                                    ctx.work)
                    lF = _poly_add_into(ctx, ctx.F, fsflat + i * W, fslen[i],
                                        ctx.work, lw_)
                    if _is_irreducible(ctx, ctx.F, lF):
                        ind[i] += 1
                    else:
                        allp = 0
                if allp:
                    conj += 1

            j = 0
            while j < width:
                digits[j] += 1
                if digits[j] < q:
                    break
                digits[j] = 0
                j += 1

    if bad_key:
        raise RuntimeError(f"{bad_key} factorization-type keys missing from "
                           f"the key table")
    if mode == M_PRIME:
        return [irr, irr_by_type]
    if mode == M_FROB:
        return [counts[i] for i in range(nk)] + [nsf]
    if mode == M_MOBIUS or mode == M_CHOWLA:
        return [acc]
    return [conj] + [ind[i] for i in range(r)]


def mn_sweep(int mode, int q, int p, int nu,
             const int[::1] mul, const int[::1] add,
             const int[::1] inv, const int[::1] neg,
             const int[::1] chi, int chi_valid,
             int n, shifts, eps, ap_mod, ap_res, lo, hi, keys):
    """Sweep all monic degree-n polynomials with coefficient index in [lo, hi)."""
    cdef int r = len(shifts)
    cdef int nk = len(keys)
    cdef int W, i, need_keys, lam, lar
    cdef long long cnt
    cdef Ctx ctx

    if mode not in (M_PRIME, M_TYPE, M_MOBIUS, M_CHOWLA, M_AP):
        raise ValueError(f"unsupported Mn mode {mode}")
    if n > MAX_WIDTH or n < 0:
        raise ValueError("degree exceeds kernel capacity")
    if mode == M_AP and (ap_mod is None or len(ap_mod) == 0):
        raise ValueError("residue-class mode needs a nonzero modulus")
    need_keys = mode == M_TYPE
    if need_keys and n > MAX_KEYED_DEGREE:
        raise ValueError(f"factorization-type keys overflow beyond degree "
                         f"{MAX_KEYED_DEGREE}; use the object-layer route")
    cnt = _loop_count(lo, hi)

    W = 2 * n + 8
    ctx.q = q; ctx.p = p; ctx.nu = nu; ctx.chi_valid = chi_valid; ctx.W = W
    ctx.mul = <int*>&mul[0]; ctx.add = <int*>&add[0]
    ctx.inv = <int*>&inv[0]; ctx.neg = <int*>&neg[0]; ctx.chi = <int*>&chi[0]

    lam = len(ap_mod) if ap_mod is not None else 0
    lar = len(ap_res) if ap_res is not None else 0
    # arena: named slots, r slots for shifts, eps flags, then the residue
    # pair sized to fit however large the modulus is
    cdef _Arena arena = _Arena((N_SLOTS + r) * W + max(r, 1) + lam + lar + 2,
                               2 * MAX_WIDTH + nk + nk + 1)
    _bind_slots(&ctx, arena.ints)
    cdef int* shiftflat = arena.ints + N_SLOTS * W
    cdef int* epsbuf = shiftflat + r * W
    cdef int* apmodbuf = epsbuf + max(r, 1)
    cdef int* apresbuf = apmodbuf + lam + 1
    ctx.radixpow = arena.lls
    ctx.ones = arena.lls + MAX_WIDTH
    cdef long long* keybuf = arena.lls + 2 * MAX_WIDTH
    cdef long long* counts = keybuf + nk

    cdef int* shiftlen = <int*>malloc(max(r, 1) * sizeof(int))
    if shiftlen == NULL:
        raise MemoryError("kernel arena allocation failed")
    try:
        for i in range(r):
            shiftlen[i] = _copy_poly(shifts[i], shiftflat + i * W, W)
        for i in range(min(len(eps), r)):
            epsbuf[i] = eps[i]
        if lam:
            lam = _copy_poly(ap_mod, apmodbuf, lam)
        if lar:
            lar = _copy_poly(ap_res, apresbuf, lar)
        for i in range(nk):
            keybuf[i] = keys[i]
        _fill_radix(&ctx, n, need_keys)

        return _mn_run(&ctx, mode, n, shiftflat, shiftlen, epsbuf, r,
                       apmodbuf, lam, apresbuf, lar, lo, cnt, keybuf, counts,
                       nk)
    finally:
        free(shiftlen)


cdef _mn_run(Ctx* ctx, int mode, int n, const int* shiftflat,
             const int* shiftlen, const int* epsbuf, int r,
             const int* apmodbuf, int lam, const int* apresbuf, int lar,
             object lo, long long cnt, const long long* keybuf,
             long long* counts, int nk):
    cdef int digits[MAX_WIDTH]
    cdef int W = ctx.W
    cdef int q = ctx.q
    cdef long long irr = 0, acc = 0, matches = 0, bad_key = 0
    cdef long long step, key, idx
    cdef int lh, lF, lrem, sf, j, i, v, prod, match
    _fill_digits(lo, q, n, digits)

    with nogil:
        for step in range(cnt):
            for j in range(n):
                ctx.h[j] = digits[j]
            ctx.h[n] = 1
            lh = n + 1

            if mode == M_PRIME:
                if _is_irreducible(ctx, ctx.h, lh):
                    irr += 1
            elif mode == M_TYPE:
                key = _type_key(ctx, ctx.h, lh, &sf)
                idx = _find_key(keybuf, nk, key)
                if idx < 0:
                    bad_key += 1
                else:
                    counts[idx] += 1
            elif mode == M_MOBIUS:
                acc += _mobius(ctx, ctx.h, lh)
            elif mode == M_CHOWLA:
                prod = 1
                for i in range(r):
                    lF = _poly_add_into(ctx, ctx.F, ctx.h, lh,
                                        shiftflat + i * W, shiftlen[i])
                    v = _mobius(ctx, ctx.F, lF)
                    if epsbuf[i] == 2:
                        v *= v
                    prod *= v
                    if prod == 0:
                        break
                acc += prod
            else:  # M_AP
                memcpy(ctx.F, ctx.h, lh * sizeof(int))
                lrem = _poly_mod(ctx, ctx.F, lh, apmodbuf, lam)
                match = lrem == lar
                if match:
                    for j in range(lrem):
                        if ctx.F[j] != apresbuf[j]:
                            match = 0
                            break
                if match and _is_irreducible(ctx, ctx.h, lh):
                    matches += 1

            j = 0
            while j < n:
                digits[j] += 1
                if digits[j] < q:
                    break
                digits[j] = 0
                j += 1

    if bad_key:
        raise RuntimeError(f"{bad_key} factorization-type keys missing from "
                           f"the key table")
    if mode == M_PRIME:
        return [irr]
    if mode == M_TYPE:
        return [counts[i] for i in range(nk)]
    if mode == M_MOBIUS or mode == M_CHOWLA:
        return [acc]
    return [matches]


def weil_sum(int q, const int[::1] mul, const int[::1] add,
             const int[::1] chi, pcodes):
    """Sum of chi over the values of the polynomial at every field element."""
    cdef int lp = len(pcodes)
    cdef int* pc = <int*>malloc(max(lp, 1) * sizeof(int))
    if pc == NULL:
        raise MemoryError("kernel arena allocation failed")
    cdef const int* mt = &mul[0]
    cdef const int* at = &add[0]
    cdef const int* ct = &chi[0]
    cdef long long total = 0
    cdef int b, acc, k
    try:
        for k in range(lp):
            pc[k] = pcodes[k]
        with nogil:
            for b in range(q):
                acc = 0
                for k in range(lp - 1, -1, -1):
                    acc = at[mt[acc * q + b] * q + pc[k]]
                total += ct[acc]
        return total
    finally:
        free(pc)
