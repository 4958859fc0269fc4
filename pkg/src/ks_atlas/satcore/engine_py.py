"""Pure-Python CDCL solver: watched literals, 1UIP learning, deterministic
VSIDS (ties broken by variable index), phase saving with false-first
polarity, Luby restarts, assumption interface with core extraction.

This is the reference implementation of the solving kernel; the compiled
extension (ks_atlas._core) mirrors it operation-for-operation so both
backends return identical verdicts, models, and cores.

Literals use the DIMACS convention externally (nonzero signed ints);
internally literal 2v encodes +v and 2v+1 encodes -v.
"""

from __future__ import annotations

UNDEF = 0
TRUE = 1
FALSE = 2


def _luby(y: float, x: int) -> float:
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) // 2
        seq -= 1
        x = x % size
    return y ** seq


class Solver:
    """Incremental CDCL solver over DIMACS-style integer literals."""

    def __init__(self):
        self.n_vars = 0
        self.clauses: list[list[int]] = []     # internal-literal clauses
        self.learnt_flag: list[bool] = []
        self.deleted: list[bool] = []
        self.cla_act: list[float] = []
        self.lbd: list[int] = []
        self.watches: list[list[int]] = [[], []]
        self.value: list[int] = [UNDEF]        # per variable, 1-based
        self.polarity: list[bool] = [False]    # saved phase; False-first
        self.var_act: list[float] = [0.0]
        self.level: list[int] = [0]
        self.reason: list[int] = [-1]
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.seen: list[int] = [0]
        self.heap: list[int] = []
        self.heap_pos: list[int] = [-1]
        self.var_inc = 1.0
        self.cla_inc = 1.0
        self.ok = True
        self.model: list[bool] | None = None
        self.core: list[int] | None = None
        self.conflict_budget = -1
        self.conflicts = 0
        self.propagations = 0
        self.restarts = 0
        self.max_learnts = 0.0
        self.n_learnt = 0

    # -- variables ---------------------------------------------------------

    def new_var(self) -> int:
        self.n_vars += 1
        v = self.n_vars
        self.value.append(UNDEF)
        self.polarity.append(False)
        self.var_act.append(0.0)
        self.level.append(0)
        self.reason.append(-1)
        self.seen.append(0)
        self.heap_pos.append(-1)
        self.watches.append([])
        self.watches.append([])
        self._heap_insert(v)
        return v

    def ensure_vars(self, n: int):
        while self.n_vars < n:
            self.new_var()

    # -- deterministic activity heap ----------------------------------------

    def _heap_lt(self, a: int, b: int) -> bool:
        aa, ab = self.var_act[a], self.var_act[b]
        return aa > ab or (aa == ab and a < b)

    def _heap_insert(self, v: int):
        if self.heap_pos[v] >= 0:
            return
        self.heap.append(v)
        self.heap_pos[v] = len(self.heap) - 1
        self._heap_up(len(self.heap) - 1)

    def _heap_up(self, i: int):
        h, pos = self.heap, self.heap_pos
        v = h[i]
        while i > 0:
            p = (i - 1) >> 1
            if self._heap_lt(v, h[p]):
                h[i] = h[p]
                pos[h[p]] = i
                i = p
            else:
                break
        h[i] = v
        pos[v] = i

    def _heap_down(self, i: int):
        h, pos = self.heap, self.heap_pos
        v = h[i]
        n = len(h)
        while True:
            l = 2 * i + 1
            if l >= n:
                break
            r = l + 1
            c = r if r < n and self._heap_lt(h[r], h[l]) else l
            if self._heap_lt(h[c], v):
                h[i] = h[c]
                pos[h[c]] = i
                i = c
            else:
                break
        h[i] = v
        pos[v] = i

    def _heap_pop(self) -> int:
        h, pos = self.heap, self.heap_pos
        v = h[0]
        last = h.pop()
        pos[v] = -1
        if h:
            h[0] = last
            pos[last] = 0
            self._heap_down(0)
        return v

    def _heap_bump(self, v: int):
        if self.heap_pos[v] >= 0:
            self._heap_up(self.heap_pos[v])

    # -- clause management ----------------------------------------------------

    def add_clause(self, lits) -> bool:
        """Add an original clause (DIMACS ints).  Returns False when the
        instance is already contradictory at level 0."""
        assert len(self.trail_lim) == 0, "add_clause only at decision level 0"
        if not self.ok:
            return False
        internal = []
        seen = set()
        for ext in lits:
            v = abs(ext)
            self.ensure_vars(v)
            lit = 2 * v + (1 if ext < 0 else 0)
            if lit ^ 1 in seen:
                return True  # tautology
            if lit in seen:
                continue
            val = self._vallit(lit)
            if val == TRUE and self.level[v] == 0:
                return True
            if val == FALSE and self.level[v] == 0:
                continue
            seen.add(lit)
            internal.append(lit)
        if not internal:
            self.ok = False
            return False
        if len(internal) == 1:
            if not self._enqueue(internal[0], -1) or self._propagate() != -1:
                self.ok = False
                return False
            return True
        self._attach_new(internal, learnt=False)
        return True

    def _attach_new(self, internal: list[int], learnt: bool) -> int:
        ci = len(self.clauses)
        self.clauses.append(internal)
        self.learnt_flag.append(learnt)
        self.deleted.append(False)
        self.cla_act.append(0.0)
        self.lbd.append(0)
        self.watches[internal[0]].append(ci)
        self.watches[internal[1]].append(ci)
        if learnt:
            self.n_learnt += 1
        return ci

    def _vallit(self, lit: int) -> int:
        val = self.value[lit >> 1]
        if val == UNDEF:
            return UNDEF
        pos = (lit & 1) == 0
        return TRUE if (val == TRUE) == pos else FALSE

    # -- trail ---------------------------------------------------------------

    def _enqueue(self, lit: int, reason: int) -> bool:
        v = lit >> 1
        val = self._vallit(lit)
        if val == FALSE:
            return False
        if val == TRUE:
            return True
        self.value[v] = TRUE if (lit & 1) == 0 else FALSE
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)
        return True

    def _propagate(self) -> int:
        """Unit propagation; returns conflicting clause index or -1."""
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            false_lit = p ^ 1
            ws = self.watches[false_lit]
            i = j = 0
            n = len(ws)
            confl = -1
            while i < n:
                ci = ws[i]
                i += 1
                if self.deleted[ci]:
                    continue
                self.propagations += 1
                lits = self.clauses[ci]
                if lits[0] == false_lit:
                    lits[0], lits[1] = lits[1], lits[0]
                first = lits[0]
                if self._vallit(first) == TRUE:
                    ws[j] = ci
                    j += 1
                    continue
                found = False
                for k in range(2, len(lits)):
                    lk = lits[k]
                    if self._vallit(lk) != FALSE:
                        lits[1], lits[k] = lits[k], lits[1]
                        self.watches[lk].append(ci)
                        found = True
                        break
                if found:
                    continue
                ws[j] = ci
                j += 1
                if self._vallit(first) == FALSE:
                    confl = ci
                    self.qhead = len(self.trail)
                    while i < n:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    break
                self._enqueue(first, ci)
            del ws[j:]
            if confl != -1:
                return confl
        return -1

    def _cancel_until(self, lvl: int):
        if len(self.trail_lim) <= lvl:
            return
        bound = self.trail_lim[lvl]
        for k in range(len(self.trail) - 1, bound - 1, -1):
            lit = self.trail[k]
            v = lit >> 1
            self.polarity[v] = (lit & 1) == 0
            self.value[v] = UNDEF
            self.reason[v] = -1
            self._heap_insert(v)
        del self.trail[bound:]
        del self.trail_lim[lvl:]
        self.qhead = len(self.trail)

    # -- activities -------------------------------------------------------------

    def _bump_var(self, v: int):
        self.var_act[v] += self.var_inc
        if self.var_act[v] > 1e100:
            for u in range(1, self.n_vars + 1):
                self.var_act[u] *= 1e-100
            self.var_inc *= 1e-100
        self._heap_bump(v)

    def _bump_cla(self, ci: int):
        self.cla_act[ci] += self.cla_inc
        if self.cla_act[ci] > 1e20:
            for u in range(len(self.clauses)):
                self.cla_act[u] *= 1e-20
            self.cla_inc *= 1e-20

    # -- conflict analysis -------------------------------------------------------

    def _analyze(self, confl: int) -> tuple[list[int], int, int]:
        learnt = [0]
        seen = self.seen
        path = 0
        p = -1
        idx = len(self.trail) - 1
        cur_level = len(self.trail_lim)
        while True:
            lits = self.clauses[confl]
            if self.learnt_flag[confl]:
                self._bump_cla(confl)
            for k in range(0 if p == -1 else 1, len(lits)):
                q = lits[k]
                v = q >> 1
                if not seen[v] and self.level[v] > 0:
                    seen[v] = 1
                    self._bump_var(v)
                    if self.level[v] >= cur_level:
                        path += 1
                    else:
                        learnt.append(q)
            while not seen[self.trail[idx] >> 1]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            v = p >> 1
            confl = self.reason[v]
            seen[v] = 0
            path -= 1
            if path <= 0:
                break
        learnt[0] = p ^ 1
        # basic clause minimization: drop literals implied by the rest;
        # seen flags of dropped literals must still be cleared afterwards
        to_clear = list(learnt)
        keep = [learnt[0]]
        for q in learnt[1:]:
            v = q >> 1
            r = self.reason[v]
            if r == -1:
                keep.append(q)
                continue
            redundant = True
            for other in self.clauses[r]:
                u = other >> 1
                if u != v and not seen[u] and self.level[u] > 0:
                    redundant = False
                    break
            if not redundant:
                keep.append(q)
        learnt = keep
        # backjump level and LBD
        if len(learnt) == 1:
            bt = 0
        else:
            mx = 1
            for k in range(2, len(learnt)):
                if self.level[learnt[k] >> 1] > self.level[learnt[mx] >> 1]:
                    mx = k
            learnt[1], learnt[mx] = learnt[mx], learnt[1]
            bt = self.level[learnt[1] >> 1]
        levels = set()
        for q in learnt:
            levels.add(self.level[q >> 1])
        for q in to_clear:
            seen[q >> 1] = 0
        return learnt, bt, len(levels)

    def _analyze_final(self, p: int) -> list[int]:
        """Subset of assumption literals (internal form) implying the conflict."""
        out = [p]
        if len(self.trail_lim) == 0:
            return out
        seen = self.seen
        seen[p >> 1] = 1
        for k in range(len(self.trail) - 1, self.trail_lim[0] - 1, -1):
            lit = self.trail[k]
            v = lit >> 1
            if seen[v]:
                r = self.reason[v]
                if r == -1:
                    out.append(lit)
                else:
                    for q in self.clauses[r]:
                        u = q >> 1
                        if u != v and self.level[u] > 0:
                            seen[u] = 1
                seen[v] = 0
        seen[p >> 1] = 0
        return out

    # -- learnt DB reduction --------------------------------------------------------

    def _locked(self, ci: int) -> bool:
        lits = self.clauses[ci]
        v = lits[0] >> 1
        return self.reason[v] == ci and self.value[v] != UNDEF

    def _reduce_db(self):
        order = [ci for ci in range(len(self.clauses))
                 if self.learnt_flag[ci] and not self.deleted[ci]]
        order.sort(key=lambda ci: (self.lbd[ci], -self.cla_act[ci], ci))
        keep = len(order) // 2
        for pos in range(keep, len(order)):
            ci = order[pos]
            if self.lbd[ci] <= 2 or self._locked(ci):
                continue
            self.deleted[ci] = True
            self.n_learnt -= 1

    # -- main search -------------------------------------------------------------------

    def _pick_branch(self) -> int:
        while self.heap:
            v = self.heap[0]
            if self.value[v] == UNDEF:
                self._heap_pop()
                return 2 * v + (0 if self.polarity[v] else 1)
            self._heap_pop()
        return -1

    def solve(self, assumptions=()) -> bool | None:
        """True = satisfiable (model available), False = unsatisfiable (core
        available when assumptions were given), None = conflict budget hit."""
        self.model = None
        self.core = None
        if not self.ok:
            self.core = []
            return False
        assume = []
        for ext in assumptions:
            v = abs(ext)
            self.ensure_vars(v)
            assume.append(2 * v + (1 if ext < 0 else 0))
        self.max_learnts = max(4000.0, 2.0 * len(self.clauses))
        budget = self.conflict_budget
        start_conflicts = self.conflicts
        restart_num = 0
        limit = self.conflicts + int(_luby(2.0, restart_num) * 100)
        if self._propagate() != -1:
            self.ok = False
            self.core = []
            return False
        while True:
            confl = self._propagate()
            if confl != -1:
                self.conflicts += 1
                if len(self.trail_lim) == 0:
                    self.ok = False
                    self.core = []
                    return False
                learnt, bt, lbd = self._analyze(confl)
                self._cancel_until(bt)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], -1)
                else:
                    ci = self._attach_new(learnt, learnt=True)
                    self.lbd[ci] = lbd
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
                    limit = self.conflicts + int(_luby(2.0, restart_num) * 100)
                    self._cancel_until(0)
                if self.n_learnt >= self.max_learnts:
                    self._reduce_db()
                    self.max_learnts *= 1.5
                continue
            dl = len(self.trail_lim)
            if dl < len(assume):
                p = assume[dl]
                val = self._vallit(p)
                if val == TRUE:
                    self.trail_lim.append(len(self.trail))
                    continue
                if val == FALSE:
                    # p together with the assumptions implying not-p is a
                    # conflicting subset of the caller's assumptions
                    implying = self._analyze_final(p ^ 1)
                    core_internal = {p}
                    core_internal.update(implying[1:])
                    self.core = sorted(
                        ((l >> 1) if (l & 1) == 0 else -(l >> 1) for l in core_internal),
                        key=abs)
                    self._cancel_until(0)
                    return False
                self.trail_lim.append(len(self.trail))
                self._enqueue(p, -1)
                continue
            lit = self._pick_branch()
            if lit == -1:
                self.model = [False] * (self.n_vars + 1)
                for v in range(1, self.n_vars + 1):
                    self.model[v] = self.value[v] == TRUE
                self._verify_model()
                self._cancel_until(0)
                return True
            self.trail_lim.append(len(self.trail))
            self._enqueue(lit, -1)

    def _verify_model(self):
        for ci, lits in enumerate(self.clauses):
            if self.learnt_flag[ci] or self.deleted[ci]:
                continue
            ok = False
            for lit in lits:
                v = lit >> 1
                if self.model[v] == ((lit & 1) == 0):
                    ok = True
                    break
            if not ok:
                raise AssertionError("model fails clause; solver bug")

    # -- external conveniences --------------------------------------------------------

    def model_list(self) -> list[bool]:
        return list(self.model) if self.model is not None else None

    def debug_state(self) -> dict:
        return {
            "value": list(self.value),
            "polarity": [bool(p) for p in self.polarity],
            "var_act": list(self.var_act),
            "heap": list(self.heap),
            "trail": list(self.trail),
            "trail_lim": list(self.trail_lim),
        }

    def stats(self) -> dict:
        return {
            "conflicts": self.conflicts,
            "propagations": self.propagations,
            "restarts": self.restarts,
            "clauses": len(self.clauses) - self.n_learnt,
            "learnts": self.n_learnt,
        }
