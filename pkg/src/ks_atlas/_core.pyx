# cython: language_level=3
# distutils: language = c++
"""Compiled CDCL kernel: a literal port of ks_atlas.satcore.engine_py.

The heuristics, float arithmetic, and tie-breaking mirror the pure-Python
engine operation for operation, so both backends produce identical
verdicts, models, and cores.  Literals use the DIMACS convention
externally; internally literal 2v encodes +v and 2v+1 encodes -v.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdint cimport uint64_t
from libcpp.vector cimport vector

cdef int UNDEF = 0
cdef int TRUE = 1
cdef int FALSE = 2


cdef int _WORDS = 4  # 256-bit set masks; pools certified here stay below 256 rays


cdef inline int _popcount64(uint64_t x):
    x = x - ((x >> 1) & 0x5555555555555555ULL)
    x = (x & 0x3333333333333333ULL) + ((x >> 2) & 0x3333333333333333ULL)
    x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0FULL
    return <int>((x * 0x0101010101010101ULL) >> 56)


cdef struct HsCtx:
    uint64_t *family     # m sets, 4 words each
    int m
    int *covers
    long nodes
    long node_budget


cdef int _hs_search(HsCtx *ctx, uint64_t *chosen, int budget, list picked):
    """Depth-first search for a hitting set of size <= budget; a single pass
    over the family finds the pivot (smallest unhit set) and a greedy
    disjoint-packing lower bound.  Returns 1 found, 0 exhausted, -2 when the
    node budget ran out."""
    ctx.nodes += 1
    if ctx.node_budget >= 0 and ctx.nodes > ctx.node_budget:
        return -2
    cdef uint64_t used[4]
    cdef uint64_t pivot[4]
    cdef int w, i, pc, best_pc, packing
    cdef bint hit, disj
    cdef uint64_t *s
    for w in range(_WORDS):
        used[w] = 0
    best_pc = -1
    packing = 0
    for i in range(ctx.m):
        s = ctx.family + 4 * i
        hit = False
        for w in range(_WORDS):
            if s[w] & chosen[w]:
                hit = True
                break
        if hit:
            continue
        pc = 0
        for w in range(_WORDS):
            pc += _popcount64(s[w])
        if best_pc < 0 or pc < best_pc:
            best_pc = pc
            for w in range(_WORDS):
                pivot[w] = s[w]
        disj = True
        for w in range(_WORDS):
            if s[w] & used[w]:
                disj = False
                break
        if disj:
            packing += 1
            for w in range(_WORDS):
                used[w] |= s[w]
    if best_pc < 0:
        return 1
    if packing > budget:
        return 0
    # branch on the pivot's elements, highest family coverage first
    cdef int elems[256]
    cdef int count = 0
    cdef int b, e, j, key, sub
    for w in range(_WORDS):
        if pivot[w]:
            for b in range(64):
                if pivot[w] & (<uint64_t>1 << b):
                    elems[count] = 64 * w + b
                    count += 1
    for i in range(1, count):
        e = elems[i]
        key = ctx.covers[e]
        j = i - 1
        while j >= 0 and ctx.covers[elems[j]] < key:
            elems[j + 1] = elems[j]
            j -= 1
        elems[j + 1] = e
    for i in range(count):
        e = elems[i]
        w = e >> 6
        chosen[w] |= <uint64_t>1 << (e & 63)
        picked.append(e)
        sub = _hs_search(ctx, chosen, budget - 1, picked)
        if sub != 0:
            return sub
        picked.pop()
        chosen[w] &= ~(<uint64_t>1 << (e & 63))
    return 0


class HsBudgetExceeded(Exception):
    """Node budget ran out before the hitting-set search concluded."""


def min_hitting_set(family, int n, int lb, int k_max, covers,
                    long node_budget=-1):
    """Smallest hitting set of the family (lists of ray indices) with size
    in [lb, k_max); returns (size, sorted rays) or None when every hitting
    set needs at least k_max rays.  Requires n <= 256.  Raises
    HsBudgetExceeded when a nonnegative node budget runs out."""
    if n > 64 * _WORDS:
        raise ValueError("compiled hitting-set kernel supports at most 256 elements")
    cdef int m = len(family)
    cdef uint64_t *fam = <uint64_t *>PyMem_Malloc(max(4 * m, 1) * sizeof(uint64_t))
    cdef int *cov = <int *>PyMem_Malloc(max(n, 1) * sizeof(int))
    if fam == NULL or cov == NULL:
        raise MemoryError
    cdef int i, w, r, k, res
    cdef HsCtx ctx
    cdef uint64_t chosen[4]
    cdef list picked
    try:
        for i in range(m):
            for w in range(_WORDS):
                fam[4 * i + w] = 0
            for r in family[i]:
                fam[4 * i + (r >> 6)] |= <uint64_t>1 << (r & 63)
        for i in range(n):
            cov[i] = covers[i]
        ctx.family = fam
        ctx.m = m
        ctx.covers = cov
        ctx.nodes = 0
        ctx.node_budget = node_budget
        k = lb if lb > 0 else 0
        while k < k_max:
            for w in range(_WORDS):
                chosen[w] = 0
            picked = []
            res = _hs_search(&ctx, chosen, k, picked)
            if res == 1:
                return len(picked), sorted(picked)
            if res == -2:
                raise HsBudgetExceeded(f"{ctx.nodes} nodes at bound {k}")
            k += 1
        return None
    finally:
        PyMem_Free(fam)
        PyMem_Free(cov)


cdef double _luby(double y, int x):
    cdef int size = 1
    cdef int seq = 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) // 2
        seq -= 1
        x = x % size
    cdef double out = 1.0
    while seq > 0:
        out *= y
        seq -= 1
    return out


cdef class Solver:
    """Incremental CDCL solver over DIMACS-style integer literals."""

    cdef public int n_vars
    cdef vector[int] arena
    cdef vector[int] cl_start
    cdef vector[int] cl_size
    cdef vector[char] cl_learnt
    cdef vector[char] cl_deleted
    cdef vector[double] cl_act
    cdef vector[int] cl_lbd
    cdef vector[vector[int]] watches
    cdef vector[int] value
    cdef vector[char] polarity
    cdef vector[double] var_act
    cdef vector[int] level
    cdef vector[int] reason
    cdef vector[int] trail
    cdef vector[int] trail_lim
    cdef int qhead
    cdef vector[char] seen
    cdef vector[int] heap
    cdef vector[int] heap_pos
    cdef double var_inc
    cdef double cla_inc
    cdef public bint ok
    cdef public object model
    cdef public object core
    cdef public long conflict_budget
    cdef public long conflicts
    cdef public long propagations
    cdef public long restarts
    cdef double max_learnts
    cdef long n_learnt
    cdef public object trace

    def __cinit__(self):
        self.trace = None
        self.n_vars = 0
        self.qhead = 0
        self.var_inc = 1.0
        self.cla_inc = 1.0
        self.ok = True
        self.model = None
        self.core = None
        self.conflict_budget = -1
        self.conflicts = 0
        self.propagations = 0
        self.restarts = 0
        self.max_learnts = 0.0
        self.n_learnt = 0
        self.watches.resize(2)
        self.value.push_back(UNDEF)
        self.polarity.push_back(0)
        self.var_act.push_back(0.0)
        self.level.push_back(0)
        self.reason.push_back(-1)
        self.seen.push_back(0)
        self.heap_pos.push_back(-1)

    # -- variables ---------------------------------------------------------

    cpdef int new_var(self):
        self.n_vars += 1
        cdef int v = self.n_vars
        self.value.push_back(UNDEF)
        self.polarity.push_back(0)
        self.var_act.push_back(0.0)
        self.level.push_back(0)
        self.reason.push_back(-1)
        self.seen.push_back(0)
        self.heap_pos.push_back(-1)
        self.watches.resize(self.watches.size() + 2)
        self._heap_insert(v)
        return v

    cpdef ensure_vars(self, int n):
        while self.n_vars < n:
            self.new_var()

    # -- deterministic activity heap ------------------------------------------

    cdef inline bint _heap_lt(self, int a, int b):
        cdef double aa = self.var_act[a]
        cdef double ab = self.var_act[b]
        return aa > ab or (aa == ab and a < b)

    cdef void _heap_insert(self, int v):
        if self.heap_pos[v] >= 0:
            return
        self.heap.push_back(v)
        self.heap_pos[v] = self.heap.size() - 1
        self._heap_up(self.heap.size() - 1)

    cdef void _heap_up(self, int i):
        cdef int v = self.heap[i]
        cdef int p
        while i > 0:
            p = (i - 1) >> 1
            if self._heap_lt(v, self.heap[p]):
                self.heap[i] = self.heap[p]
                self.heap_pos[self.heap[p]] = i
                i = p
            else:
                break
        self.heap[i] = v
        self.heap_pos[v] = i

    cdef void _heap_down(self, int i):
        cdef int v = self.heap[i]
        cdef int n = self.heap.size()
        cdef int l, r, c
        while True:
            l = 2 * i + 1
            if l >= n:
                break
            r = l + 1
            c = r if (r < n and self._heap_lt(self.heap[r], self.heap[l])) else l
            if self._heap_lt(self.heap[c], v):
                self.heap[i] = self.heap[c]
                self.heap_pos[self.heap[c]] = i
                i = c
            else:
                break
        self.heap[i] = v
        self.heap_pos[v] = i

    cdef int _heap_pop(self):
        cdef int v = self.heap[0]
        cdef int last = self.heap[self.heap.size() - 1]
        self.heap.pop_back()
        self.heap_pos[v] = -1
        if self.heap.size() > 0:
            self.heap[0] = last
            self.heap_pos[last] = 0
            self._heap_down(0)
        return v

    # -- clause management -------------------------------------------------------

    cdef inline int _vallit(self, int lit):
        cdef int val = self.value[lit >> 1]
        if val == UNDEF:
            return UNDEF
        if (val == TRUE) == ((lit & 1) == 0):
            return TRUE
        return FALSE

    def add_clause(self, lits) -> bool:
        if self.trail_lim.size() != 0:
            raise AssertionError("add_clause only at decision level 0")
        if not self.ok:
            return False
        cdef list internal = []
        cdef set seen_l = set()
        cdef int v, lit, val
        for ext in lits:
            v = abs(ext)
            self.ensure_vars(v)
            lit = 2 * v + (1 if ext < 0 else 0)
            if (lit ^ 1) in seen_l:
                return True
            if lit in seen_l:
                continue
            val = self._vallit(lit)
            if val == TRUE and self.level[v] == 0:
                return True
            if val == FALSE and self.level[v] == 0:
                continue
            seen_l.add(lit)
            internal.append(lit)
        if len(internal) == 0:
            self.ok = False
            return False
        if len(internal) == 1:
            if not self._enqueue(internal[0], -1) or self._propagate() != -1:
                self.ok = False
                return False
            return True
        self._attach_new(internal, False)
        return True

    cdef int _attach_new(self, list internal, bint learnt):
        cdef int ci = self.cl_start.size()
        cdef int start = self.arena.size()
        cdef int l
        for l in internal:
            self.arena.push_back(l)
        self.cl_start.push_back(start)
        self.cl_size.push_back(len(internal))
        self.cl_learnt.push_back(1 if learnt else 0)
        self.cl_deleted.push_back(0)
        self.cl_act.push_back(0.0)
        self.cl_lbd.push_back(0)
        self.watches[internal[0]].push_back(ci)
        self.watches[internal[1]].push_back(ci)
        if learnt:
            self.n_learnt += 1
        return ci

    # -- trail ------------------------------------------------------------------

    cdef bint _enqueue(self, int lit, int reason):
        cdef int v = lit >> 1
        cdef int val = self._vallit(lit)
        if val == FALSE:
            return False
        if val == TRUE:
            return True
        self.value[v] = TRUE if (lit & 1) == 0 else FALSE
        self.level[v] = self.trail_lim.size()
        self.reason[v] = reason
        self.trail.push_back(lit)
        return True

    cdef int _propagate(self):
        cdef int p, false_lit, i, j, n, ci, first, k, lk, confl, start, size
        cdef vector[int]* ws
        while self.qhead < <int>self.trail.size():
            p = self.trail[self.qhead]
            self.qhead += 1
            false_lit = p ^ 1
            ws = &self.watches[false_lit]
            i = j = 0
            n = ws[0].size()
            confl = -1
            while i < n:
                ci = ws[0][i]
                i += 1
                if self.cl_deleted[ci]:
                    continue
                self.propagations += 1
                start = self.cl_start[ci]
                size = self.cl_size[ci]
                if self.arena[start] == false_lit:
                    self.arena[start] = self.arena[start + 1]
                    self.arena[start + 1] = false_lit
                first = self.arena[start]
                if self._vallit(first) == TRUE:
                    ws[0][j] = ci
                    j += 1
                    continue
                lk = 0
                k = start + 2
                while k < start + size:
                    if self._vallit(self.arena[k]) != FALSE:
                        lk = self.arena[k]
                        self.arena[k] = self.arena[start + 1]
                        self.arena[start + 1] = lk
                        self.watches[lk].push_back(ci)
                        break
                    k += 1
                if k < start + size:
                    continue
                ws[0][j] = ci
                j += 1
                if self._vallit(first) == FALSE:
                    confl = ci
                    self.qhead = self.trail.size()
                    while i < n:
                        ws[0][j] = ws[0][i]
                        j += 1
                        i += 1
                    break
                self._enqueue(first, ci)
            ws[0].resize(j)
            if confl != -1:
                return confl
        return -1

    cdef void _cancel_until(self, int lvl):
        if <int>self.trail_lim.size() <= lvl:
            return
        cdef int bound = self.trail_lim[lvl]
        cdef int k, lit, v
        cdef char pol
        for k in range(<int>self.trail.size() - 1, bound - 1, -1):
            lit = self.trail[k]
            v = lit >> 1
            pol = 1 if (lit & 1) == 0 else 0
            self.polarity[v] = pol
            self.value[v] = UNDEF
            self.reason[v] = -1
            self._heap_insert(v)
        self.trail.resize(bound)
        self.trail_lim.resize(lvl)
        self.qhead = bound

    # -- activities -----------------------------------------------------------------

    cdef void _bump_var(self, int v):
        self.var_act[v] += self.var_inc
        cdef int u
        if self.var_act[v] > 1e100:
            for u in range(1, self.n_vars + 1):
                self.var_act[u] *= 1e-100
            self.var_inc *= 1e-100
        if self.heap_pos[v] >= 0:
            self._heap_up(self.heap_pos[v])

    cdef void _bump_cla(self, int ci):
        self.cl_act[ci] += self.cla_inc
        cdef size_t u
        if self.cl_act[ci] > 1e20:
            for u in range(self.cl_act.size()):
                self.cl_act[u] *= 1e-20
            self.cla_inc *= 1e-20

    # -- conflict analysis -------------------------------------------------------------

    cdef tuple _analyze(self, int confl):
        cdef list learnt = [0]
        cdef int path = 0
        cdef int p = -1
        cdef int idx = self.trail.size() - 1
        cdef int cur_level = self.trail_lim.size()
        cdef int start, size, k, q, v, kk
        while True:
            start = self.cl_start[confl]
            size = self.cl_size[confl]
            if self.cl_learnt[confl]:
                self._bump_cla(confl)
            k = start if p == -1 else start + 1
            while k < start + size:
                q = self.arena[k]
                v = q >> 1
                if not self.seen[v] and self.level[v] > 0:
                    self.seen[v] = 1
                    self._bump_var(v)
                    if self.level[v] >= cur_level:
                        path += 1
                    else:
                        learnt.append(q)
                k += 1
            while not self.seen[self.trail[idx] >> 1]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            v = p >> 1
            confl = self.reason[v]
            self.seen[v] = 0
            path -= 1
            if path <= 0:
                break
        learnt[0] = p ^ 1
        cdef list to_clear = list(learnt)
        cdef list keep = [learnt[0]]
        cdef int r, u
        cdef bint redundant
        for q in learnt[1:]:
            v = q >> 1
            r = self.reason[v]
            if r == -1:
                keep.append(q)
                continue
            redundant = True
            start = self.cl_start[r]
            size = self.cl_size[r]
            for kk in range(start, start + size):
                u = self.arena[kk] >> 1
                if u != v and not self.seen[u] and self.level[u] > 0:
                    redundant = False
                    break
            if not redundant:
                keep.append(q)
        learnt = keep
        cdef int bt, mx
        if len(learnt) == 1:
            bt = 0
        else:
            mx = 1
            for k in range(2, len(learnt)):
                if self.level[(<int>learnt[k]) >> 1] > self.level[(<int>learnt[mx]) >> 1]:
                    mx = k
            learnt[1], learnt[mx] = learnt[mx], learnt[1]
            bt = self.level[(<int>learnt[1]) >> 1]
        cdef set levels = set()
        for q in learnt:
            levels.add(self.level[q >> 1])
        for q in to_clear:
            self.seen[q >> 1] = 0
        return learnt, bt, len(levels)

    cdef list _analyze_final(self, int p):
        cdef list out = [p]
        if self.trail_lim.size() == 0:
            return out
        cdef int k, lit, v, r, start, size, q, u
        self.seen[p >> 1] = 1
        for k in range(<int>self.trail.size() - 1, self.trail_lim[0] - 1, -1):
            lit = self.trail[k]
            v = lit >> 1
            if self.seen[v]:
                r = self.reason[v]
                if r == -1:
                    out.append(lit)
                else:
                    start = self.cl_start[r]
                    size = self.cl_size[r]
                    for q in range(start, start + size):
                        u = self.arena[q] >> 1
                        if u != v and self.level[u] > 0:
                            self.seen[u] = 1
                self.seen[v] = 0
        self.seen[p >> 1] = 0
        return out

    # -- learnt DB reduction ---------------------------------------------------------------

    cdef bint _locked(self, int ci):
        cdef int v = self.arena[self.cl_start[ci]] >> 1
        return self.reason[v] == ci and self.value[v] != UNDEF

    cdef void _reduce_db(self):
        cdef list order = []
        cdef int ci
        for ci in range(<int>self.cl_start.size()):
            if self.cl_learnt[ci] and not self.cl_deleted[ci]:
                order.append((self.cl_lbd[ci], -self.cl_act[ci], ci))
        order.sort()
        cdef int keep = len(order) // 2
        cdef int pos
        for pos in range(keep, len(order)):
            ci = order[pos][2]
            if self.cl_lbd[ci] <= 2 or self._locked(ci):
                continue
            self.cl_deleted[ci] = 1
            self.n_learnt -= 1

    # -- main search ------------------------------------------------------------------------

    cdef int _pick_branch(self):
        cdef int v
        while self.heap.size() > 0:
            v = self.heap[0]
            if self.value[v] == UNDEF:
                self._heap_pop()
                return 2 * v + (0 if self.polarity[v] else 1)
            self._heap_pop()
        return -1

    def solve(self, assumptions=()):
        self.model = None
        self.core = None
        if not self.ok:
            self.core = []
            return False
        cdef list assume = []
        cdef int v, lit, confl, dl, p, val, bt, lbd, ci
        for ext in assumptions:
            v = abs(ext)
            self.ensure_vars(v)
            assume.append(2 * v + (1 if ext < 0 else 0))
        self.max_learnts = max(4000.0, 2.0 * self.cl_start.size())
        cdef long budget = self.conflict_budget
        cdef long start_conflicts = self.conflicts
        cdef int restart_num = 0
        cdef long limit = self.conflicts + <long>(_luby(2.0, restart_num) * 100)
        cdef list learnt
        if self._propagate() != -1:
            self.ok = False
            self.core = []
            return False
        while True:
            confl = self._propagate()
            if confl != -1:
                self.conflicts += 1
                if self.trail_lim.size() == 0:
                    self.ok = False
                    self.core = []
                    return False
                learnt, bt, lbd = self._analyze(confl)
                self._cancel_until(bt)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], -1)
                else:
                    ci = self._attach_new(learnt, True)
                    self.cl_lbd[ci] = lbd
                    self._bump_cla(ci)
                    self._enqueue(learnt[0], ci)
                self.var_inc /= 0.95
                self.cla_inc /= 0.999
                if budget >= 0 and self.conflicts - start_conflicts >= budget:
                    self._cancel_until(0)
                    return None
                if self.conflicts >= limit:
                    restart_num += 1
                    self.restarts += 1
                    limit = self.conflicts + <long>(_luby(2.0, restart_num) * 100)
                    self._cancel_until(0)
                if self.n_learnt >= self.max_learnts:
                    self._reduce_db()
                    self.max_learnts *= 1.5
                continue
            dl = self.trail_lim.size()
            if dl < len(assume):
                p = assume[dl]
                val = self._vallit(p)
                if self.trace is not None:
                    self.trace.append(("assume", dl, p, val, [self.trail[i] for i in range(<int>self.trail.size())]))
                if val == TRUE:
                    self.trail_lim.push_back(self.trail.size())
                    continue
                if val == FALSE:
                    implying = self._analyze_final(p ^ 1)
                    core_internal = {p}
                    core_internal.update(implying[1:])
                    self.core = sorted(
                        ((l >> 1) if (l & 1) == 0 else -(l >> 1) for l in core_internal),
                        key=abs)
                    self._cancel_until(0)
                    return False
                self.trail_lim.push_back(self.trail.size())
                self._enqueue(p, -1)
                continue
            lit = self._pick_branch()
            if lit == -1:
                model = [False] * (self.n_vars + 1)
                for v in range(1, self.n_vars + 1):
                    model[v] = self.value[v] == TRUE
                self.model = model
                self._verify_model()
                self._cancel_until(0)
                return True
            self.trail_lim.push_back(self.trail.size())
            self._enqueue(lit, -1)

    def _verify_model(self):
        cdef int ci, k, lit, v, start, size
        cdef bint ok
        for ci in range(<int>self.cl_start.size()):
            if self.cl_learnt[ci] or self.cl_deleted[ci]:
                continue
            ok = False
            start = self.cl_start[ci]
            size = self.cl_size[ci]
            for k in range(start, start + size):
                lit = self.arena[k]
                v = lit >> 1
                if self.model[v] == ((lit & 1) == 0):
                    ok = True
                    break
            if not ok:
                raise AssertionError("model fails clause; solver bug")

    # -- external conveniences -------------------------------------------------------------

    def model_list(self):
        return list(self.model) if self.model is not None else None

    def debug_state(self):
        return {
            "value": [self.value[v] for v in range(self.n_vars + 1)],
            "polarity": [bool(self.polarity[v]) for v in range(self.n_vars + 1)],
            "var_act": [self.var_act[v] for v in range(self.n_vars + 1)],
            "heap": [self.heap[i] for i in range(<int>self.heap.size())],
            "trail": [self.trail[i] for i in range(<int>self.trail.size())],
            "trail_lim": [self.trail_lim[i] for i in range(<int>self.trail_lim.size())],
        }

    def stats(self):
        return {
            "conflicts": self.conflicts,
            "propagations": self.propagations,
            "restarts": self.restarts,
            "clauses": self.cl_start.size() - self.n_learnt,
            "learnts": self.n_learnt,
        }
