"""Versal deformations by order-by-order lifting.

Starting from generators F0 of an ideal whose chosen tangent directions are
finite in number, the driver below extends the first-order family
F0 + sum(t_i * phi_i) through increasing parameter orders to a family F over
the parameter ring, together with lifted relations R, obstruction equations G
involving only the parameters, and a coefficient matrix C, so that

    transpose(F * R) + C * G == 0

holds modulo parameter terms beyond the current order -- and exactly, once
the lifting closes.  The vanishing of the entries of G cuts the base space
of the family out of the parameter space.  All arithmetic is exact over QQ.
"""

from fractions import Fraction

from .cotangent import (as_generator_matrix, cotangent1, cotangent2,
                        first_syzygies, normal_matrix)
from .errors import LiftError, ObstructionError, VersalError
from .exactla import ScalarMatrix, rref_with_transform
from .groebner import (FreeModuleElement, PolyMatrix, buchberger,
                       module_quotient_lift)
from .polyring import (Polynomial, RingSpec, extend_with_parameters,
                       mono_div, mono_divides, mono_mul)

MSG_FIRST_ORDER = "Calculating first order deformations and obstruction space"
MSG_RELATIONS = "Calculating first order relations"
MSG_LIFTING = "Starting lifting"
MSG_ORDER = "Order %d"
MSG_POLYNOMIAL = "Solution is polynomial"

_ZERO = Fraction(0)


def _fd_mul_into(acc, a, b, sign=1):
    """acc += sign * a * b for fraction-coefficient monomial dicts."""
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            mm = mono_mul(m1, m2)
            v = acc.get(mm, _ZERO) + sign * c1 * c2
            if v:
                acc[mm] = v
            else:
                acc.pop(mm, None)


class _XBasis:
    """A parameter-free module basis prepared for reducing series columns.

    The elements come from a tracked basis over the x-only ring; their
    leading terms involve no parameters, so dividing a mixed term just
    transfers its parameter part to the cofactor.  Reducing a column whose
    terms all have parameter order k therefore stays within order k and
    terminates.
    """

    __slots__ = ("ring", "key", "leads", "vecs", "exprs", "by_pos", "n_inputs")

    def __init__(self, gb, ring):
        self.ring = ring
        self.key = lambda t: (ring.monomial_key(t[1]), -t[0])
        pad = (0,) * (ring.nvars - gb.ring.nvars)
        self.leads = []
        self.vecs = []
        self.exprs = []
        self.by_pos = {}
        for idx, (el, lt, expr) in enumerate(
                zip(gb.elements, gb.leading_terms(), gb.expressions())):
            pos, mono = lt
            vec = {}
            for p, comp in enumerate(el.components):
                for m, c in comp.terms_dict.items():
                    vec[(p, m + pad)] = c
            self.leads.append((pos, mono + pad))
            self.vecs.append(vec)
            self.exprs.append({
                i: {m + pad: c for m, c in poly.terms_dict.items()}
                for i, poly in expr.items()
            })
            self.by_pos.setdefault(pos, []).append(idx)
        self.n_inputs = gb.n_generators

    def reduce(self, col, track=False):
        """Normal form of a term-dict column ``{(pos, mono): coeff}``.

        With track=True also returns cofactors over the original generators
        of the underlying basis, as ``{gen_index: fraction_dict}`` with
        col == nf + sum(cof * gen).
        """
        work = {t: c for t, c in col.items() if c}
        nf = {}
        el_cofs = {} if track else None
        while work:
            term = max(work, key=self.key)
            coeff = work.pop(term)
            if not coeff:
                continue
            pos, mono = term
            hit = -1
            for idx in self.by_pos.get(pos, ()):
                if mono_divides(self.leads[idx][1], mono):
                    hit = idx
                    break
            if hit < 0:
                nf[term] = coeff
                continue
            delta = mono_div(mono, self.leads[hit][1])
            for (p2, m2), c2 in self.vecs[hit].items():
                t2 = (p2, mono_mul(m2, delta))
                if t2 == term:
                    continue  # the leading term cancels exactly
                v = work.get(t2, _ZERO) - coeff * c2
                if v:
                    work[t2] = v
                else:
                    work.pop(t2, None)
            if track:
                d = el_cofs.setdefault(hit, {})
                d[delta] = d.get(delta, _ZERO) + coeff
        if not track:
            return nf, None
        input_cofs = {}
        for idx, mult in el_cofs.items():
            for i, expr in self.exprs[idx].items():
                acc = input_cofs.setdefault(i, {})
                _fd_mul_into(acc, mult, expr)
        return nf, {i: fd for i, fd in input_cofs.items() if fd}


class _LiftState:
    """Mutable bookkeeping for one lifting run.

    Pieces are indexed by parameter order: F[k] and R[k] are lists, G and C
    dicts keyed by order (G starts at 2, C at 0 with C[0] the matrix of
    obstruction vectors).  ``lg`` maps a G row to the order of its lowest
    nonzero piece and ``lg_poly`` to that piece itself.
    """

    __slots__ = ("ring", "m", "l", "d", "F", "R", "G", "C", "V",
                 "lg", "lg_poly", "order", "term_key", "xbasis",
                 "ideal_exprs", "n_ideal", "vhat_lookup", "vhat_rows",
                 "vhat_T", "gbt")

    def __init__(self, ring, m, l, d):
        self.ring = ring
        self.m = m
        self.l = l
        self.d = d
        self.F = []
        self.R = []
        self.G = {}
        self.C = {}
        self.V = None
        self.lg = {}
        self.lg_poly = {}
        self.order = 0
        self.term_key = lambda t: (ring.monomial_key(t[1]), -t[0])
        self.xbasis = None
        self.ideal_exprs = None
        self.n_ideal = 0
        self.vhat_lookup = {}
        self.vhat_rows = []
        self.vhat_T = []
        self.gbt = None


def _reduction_setup(F0m, R0):
    """Tracked bases splitting residual columns into relation and ideal parts.

    Returns (gb0, ideal_exprs, n_ideal): gb0 is a tracked basis of the module
    spanned by the columns of transpose(R0) together with ideal multiples of
    the unit vectors; its generators are ordered so that the first R0.cols...
    first m = R0 columns come first, then for each position the ideal basis
    polynomials.  ideal_exprs writes each ideal basis polynomial in the
    original generator columns of F0.
    """
    base = F0m.ring
    gens = list(F0m.entries[0])
    nz = [(j, p) for j, p in enumerate(gens) if not p.is_zero()]
    gbI = buchberger([p for _, p in nz], track=True)
    ideal_exprs = []
    for cofs in gbI.expressions():
        ideal_exprs.append({nz[i][0]: poly for i, poly in cofs.items()})
    hpolys = gbI.polynomials()
    l = R0.cols
    zero = Polynomial.zero(base)
    cols = PolyMatrix(base, R0.entries).transpose().columns()
    for pos in range(l):
        for h in hpolys:
            cols.append([h if i == pos else zero for i in range(l)])
    block = PolyMatrix.from_columns(base, l, cols)
    gb0 = buchberger(block, track=True)
    return gb0, ideal_exprs, len(hpolys)


def _echelon_obstructions(t2basis, gb0, St):
    """Echelonize the obstruction vectors modulo relations and the ideal.

    Returns (lookup, rows, T): lookup maps a leading (position, monomial)
    pair -- promoted to the parameter ring -- to an echelon row index; rows
    holds the echelon vectors as term lists with leading coefficient 1; row j
    of T expresses echelon vector j in the original obstruction vectors.
    """
    base = gb0.ring
    d = t2basis.dimension
    reduced = []
    support = set()
    for k in range(d):
        red = gb0.normal_form(FreeModuleElement(base, t2basis.vectors.column(k)))
        reduced.append(red)
        for pos, comp in enumerate(red.components):
            for m in comp.terms_dict:
                support.add((pos, m))
    labels = sorted(support,
                    key=lambda t: (base.monomial_key(t[1]), -t[0]),
                    reverse=True)
    col_of = {lab: c for c, lab in enumerate(labels)}
    M = ScalarMatrix(d, len(labels))
    for k, red in enumerate(reduced):
        for pos, comp in enumerate(red.components):
            for m, c in comp.terms_dict.items():
                M[k, col_of[(pos, m)]] = c
    R, pivots, T = rref_with_transform(M)
    if len(pivots) != d:
        raise LiftError("obstruction vectors are dependent modulo relations")
    pad = (0,) * (St.nvars - base.nvars)
    lookup = {}
    rows = []
    trows = []
    for j, pc in enumerate(pivots):
        pos, mono = labels[pc]
        lookup[(pos, mono + pad)] = j
        row = []
        for c in range(len(labels)):
            v = R[j, c]
            if v:
                p2, m2 = labels[c]
                row.append(((p2, m2 + pad), v))
        rows.append(row)
        trows.append([T[j, k] for k in range(d)])
    return lookup, rows, trows


def _lowest_g_basis(state):
    """Tracked scalar basis of the lowest-order pieces of the G rows.

    Each element is returned as (leading monomial, term dict, cofactor dicts
    over the G rows); all three involve only the parameters.
    """
    if not state.lg:
        state.gbt = ()
        return
    rows = sorted(state.lg)
    gb = buchberger([state.lg_poly[k] for k in rows], track=True)
    out = []
    for el, lt, expr in zip(gb.elements, gb.leading_terms(), gb.expressions()):
        poly = el.components[0]
        urep = {rows[i]: dict(c.terms_dict) for i, c in expr.items()}
        out.append((lt[1], dict(poly.terms_dict), urep))
    state.gbt = tuple(out)


def _error_term(state, target):
    """The order-`target` part of transpose(F*R) + C*G from known pieces."""
    ring = state.ring
    total = PolyMatrix.zero(ring, state.l, 1)
    for a in range(1, target):
        b = target - a
        Fa = state.F[a]
        Rb = state.R[b]
        if Fa.is_zero() or Rb.is_zero():
            continue
        total = total + (Fa * Rb).transpose()
    for cc, Cp in state.C.items():
        Gp = state.G.get(target - cc)
        if Gp is not None and not Cp.is_zero():
            total = total + Cp * Gp
    return total


def _phase_a(state, nf, target):
    """Absorb the reduced error term into new G and C contributions.

    Works down the reduced error greedily: a term whose parameter part is a
    multiple of an existing lowest-order obstruction equation is absorbed
    through C; otherwise its x-part must be the lead of an echelonized
    obstruction vector, which contributes to G.  A term matching neither is
    a genuine obstruction.

    Returns (g_new, c_new, b_sub): g_new maps a G row to a parameter-only
    term dict, c_new maps (position, G row) to a term dict, and b_sub is the
    exact total absorbed through C (needed to rebuild the residual).
    """
    ring = state.ring
    nx = ring.nx
    ntail = ring.nvars - nx
    g_new = {}
    c_new = {}
    b_sub = {}
    work = dict(nf)
    while work:
        term = max(work, key=state.term_key)
        coeff = work.pop(term)
        if not coeff:
            continue
        pos, mono = term
        xm = mono[:nx] + (0,) * ntail
        tm = (0,) * nx + mono[nx:]
        hit = None
        for cand in state.gbt or ():
            if mono_divides(cand[0], tm):
                hit = cand
                break
        if hit is not None:
            ltm, hfd, urep = hit
            base = mono_mul(xm, mono_div(tm, ltm))
            for hm, hc in hfd.items():
                t2 = (pos, mono_mul(base, hm))
                v = b_sub.get(t2, _ZERO) + coeff * hc
                if v:
                    b_sub[t2] = v
                else:
                    b_sub.pop(t2, None)
                if t2 == term:
                    continue
                w = work.get(t2, _ZERO) - coeff * hc
                if w:
                    work[t2] = w
                else:
                    work.pop(t2, None)
            for k, ufd in urep.items():
                acc = c_new.setdefault((pos, k), {})
                _fd_mul_into(acc, {base: -coeff}, ufd)
            continue
        j = state.vhat_lookup.get((pos, xm))
        if j is None:
            raise ObstructionError(
                "no deformation beyond order %d: relation %d carries an "
                "unliftable obstruction term" % (target - 1, pos))
        for t0, c2 in state.vhat_rows[j]:
            t2 = (t0[0], mono_mul(t0[1], tm))
            if t2 == term:
                continue
            w = work.get(t2, _ZERO) - coeff * c2
            if w:
                work[t2] = w
            else:
                work.pop(t2, None)
        for k, tk in enumerate(state.vhat_T[j]):
            if tk:
                acc = g_new.setdefault(k, {})
                v = acc.get(tm, _ZERO) - coeff * tk
                if v:
                    acc[tm] = v
                else:
                    acc.pop(tm, None)
    return g_new, c_new, b_sub


def _lift_step(state):
    """Extend all pieces by one parameter order; returns True when the full
    identity transpose(F*R) + C*G is now exactly zero."""
    target = state.order + 1
    ring = state.ring
    m, l = state.m, state.l

    E = _error_term(state, target)
    ed = {}
    for i in range(l):
        for mo, c in E[i, 0].terms_dict.items():
            ed[(i, mo)] = c
    nf, _ = state.xbasis.reduce(ed)
    g_new, c_new, b_sub = _phase_a(state, nf, target)

    # Exact residual: error + V*g - (part absorbed through C).  It lies in
    # the module spanned by the relation and ideal columns, whose tracked
    # cofactors give the new F and R pieces.
    res = dict(ed)
    if g_new:
        gmat = PolyMatrix(ring, [[Polynomial(ring, g_new.get(k, {}))]
                                 for k in range(state.d)])
        Vg = state.V * gmat
        for i in range(l):
            for mo, c in Vg[i, 0].terms_dict.items():
                v = res.get((i, mo), _ZERO) + c
                if v:
                    res[(i, mo)] = v
                else:
                    res.pop((i, mo), None)
    for t2, c in b_sub.items():
        v = res.get(t2, _ZERO) - c
        if v:
            res[t2] = v
        else:
            res.pop(t2, None)
    nf2, cofs = state.xbasis.reduce(res, track=True)
    if nf2:
        raise LiftError("residual fails to decompose at order %d" % target)

    zero = Polynomial.zero(ring)
    f_polys = [zero] * m
    r_acc = [[{} for _ in range(l)] for _ in range(m)]
    ng = state.n_ideal
    for idx, fd in (cofs or {}).items():
        if idx < m:
            f_polys[idx] = Polynomial(ring, {mo: -c for mo, c in fd.items()})
        else:
            pos, gi = divmod(idx - m, ng)
            for j, expr in state.ideal_exprs[gi].items():
                _fd_mul_into(r_acc[j][pos], fd, expr, -1)
    state.F.append(PolyMatrix(ring, [f_polys]))
    state.R.append(PolyMatrix(ring,
                              [[Polynomial(ring, r_acc[j][s]) for s in range(l)]
                               for j in range(m)]))

    if any(fd for fd in g_new.values()):
        gcol = [Polynomial(ring, g_new.get(k, {})) for k in range(state.d)]
        rdeg = state.V.col_degrees
        cdeg = ((0,) * ring.grading_rank,) if rdeg is not None else None
        state.G[target] = PolyMatrix(ring, [[p] for p in gcol],
                                     row_degrees=rdeg, col_degrees=cdeg)
        for k, p in enumerate(gcol):
            if not p.is_zero() and k not in state.lg:
                state.lg[k] = target
                state.lg_poly[k] = p
                state.gbt = None
    if c_new:
        per_order = {}
        for (pos, k), fd in c_new.items():
            if fd:
                o = target - state.lg[k]
                per_order.setdefault(o, {})[(pos, k)] = Polynomial(ring, fd)
        for o, entries in per_order.items():
            addition = PolyMatrix.zero(ring, l, state.d)
            rows = [list(r) for r in addition.entries]
            for (pos, k), p in entries.items():
                rows[pos][k] = p
            addition = PolyMatrix(ring, rows)
            have = state.C.get(o)
            state.C[o] = addition if have is None else have + addition

    state.order = target
    defect = _identity_defect(state)
    if defect is None or defect.is_zero():
        return True
    if not defect.t_truncate(target).is_zero():
        raise LiftError("lifting identity fails through order %d" % target)
    return False


def _identity_defect(state):
    """transpose(F*R) + C*G over all computed pieces, or None when there are
    no relations (and hence nothing to check)."""
    if state.l == 0:
        return None
    Ft = state.F[0]
    for p in state.F[1:]:
        Ft = Ft + p
    Rt = state.R[0]
    for p in state.R[1:]:
        Rt = Rt + p
    out = (Ft * Rt).transpose()
    if state.G:
        Ct = None
        for o in sorted(state.C):
            Ct = state.C[o] if Ct is None else Ct + state.C[o]
        Gt = None
        for o in sorted(state.G):
            Gt = state.G[o] if Gt is None else Gt + state.G[o]
        out = out + Ct * Gt
    return out


class DeformationResult:
    """Outcome of a versal-deformation computation.

    Attributes:
      ring         ring with the deformation parameters appended
      parameters   the parameter names, one per tangent direction
      tangent      TangentBasis of first-order deformations
      obstruction  TangentBasis of the obstruction space
      F_pieces     list of 1 x m matrices, index = parameter order
      R_pieces     list of m x l matrices
      G_pieces     dict order -> d x 1 matrix of obstruction equations
      C_pieces     dict order -> l x d coefficient matrix
      polynomial   True when transpose(F*R) + C*G == 0 holds exactly
      order        highest parameter order computed
      log          progress lines, in order of emission
    """

    def __init__(self, ring, parameters, tangent, obstruction,
                 F_pieces, R_pieces, G_pieces, C_pieces,
                 polynomial, order, log):
        self.ring = ring
        self.parameters = parameters
        self.tangent = tangent
        self.obstruction = obstruction
        self.F_pieces = list(F_pieces)
        self.R_pieces = list(R_pieces)
        self.G_pieces = dict(G_pieces)
        self.C_pieces = dict(C_pieces)
        self.polynomial = polynomial
        self.order = order
        self.log = list(log)

    @staticmethod
    def _total(pieces):
        out = None
        for p in pieces:
            out = p if out is None else out + p
        return out

    def family(self):
        """The perturbed generators as a 1 x m matrix."""
        return self._total(self.F_pieces)

    def relations(self):
        """The lifted relations as an m x l matrix, with family() * relations()
        congruent to zero modulo the obstruction equations."""
        return self._total(self.R_pieces)

    def obstruction_equations(self):
        """A d x 1 matrix of parameter-only equations cutting out the base
        space (the zero matrix when the family is unobstructed)."""
        if self.G_pieces:
            return self._total(self.G_pieces[o] for o in sorted(self.G_pieces))
        d = self.obstruction.dimension if self.obstruction is not None else 0
        return PolyMatrix.zero(self.ring, d, 1)

    def coefficient_matrix(self):
        """The l x d matrix C pairing relations with obstruction equations."""
        if self.C_pieces:
            return self._total(self.C_pieces[o] for o in sorted(self.C_pieces))
        d = self.obstruction.dimension if self.obstruction is not None else 0
        l = self.R_pieces[0].cols if self.R_pieces else 0
        return PolyMatrix.zero(self.ring, l, d)

    @property
    def tangent_dimension(self):
        return self.tangent.dimension

    @property
    def obstruction_dimension(self):
        return self.obstruction.dimension if self.obstruction is not None else 0


def versal_deformation(F0, t1=None, t2=None, degree=None, max_order=20,
                       logger=None):
    """Lift the first-order deformations of the ideal generated by F0 to a
    power-series family, order by order.

    F0 is a list of polynomials, or a 1-row matrix, over a ring without
    parameters.  With ``degree`` the tangent directions are the degree-d
    part of the normal module (deformations inside the ambient space, for
    multigraded Hilbert scheme germs); without, they form a basis of the
    quotient by trivial deformations.  Precomputed bases may be passed as
    ``t1``/``t2``.  Lifting stops once the family closes up exactly or
    ``max_order`` is reached; ``logger`` receives progress lines.
    """
    if max_order < 1:
        raise VersalError("max_order must be at least 1")
    F0m = as_generator_matrix(F0)
    base = F0m.ring
    if base.t_vars:
        raise VersalError("generators must not involve parameters")
    log = []

    def emit(line):
        log.append(line)
        if logger is not None:
            logger(line)

    emit(MSG_FIRST_ORDER)
    if t1 is None:
        t1 = normal_matrix(F0m, degree) if degree is not None else cotangent1(F0m)
    if t2 is None:
        t2 = cotangent2(F0m, degree)
    n = t1.dimension
    R0 = first_syzygies(F0m)
    m, l, d = F0m.cols, R0.cols, t2.dimension

    if n == 0:
        emit(MSG_POLYNOMIAL)
        return DeformationResult(
            base, (), t1, t2, [F0m], [R0], {}, {0: t2.vectors},
            True, 0, log)

    if base.is_graded and t1.degrees is not None:
        tdegs = [tuple(-c for c in dd) for dd in t1.degrees]
        St, params = extend_with_parameters(base, n, tdegs)
    else:
        St, params = extend_with_parameters(RingSpec(base.x_vars, ()), n)

    emit(MSG_RELATIONS)
    F0s = F0m.promote(St)
    R0s = R0.promote(St)
    tcol = PolyMatrix.from_columns(
        St, n, [[Polynomial.variable(St, nm) for nm in params]])
    F1 = (t1.vectors.promote(St) * tcol).transpose()
    if l:
        B = (F1 * R0s).map_entries(lambda p: -p)
        R1 = module_quotient_lift(F0s, B)
        if R1 is None:
            raise LiftError("first-order relations do not lift")
    else:
        R1 = PolyMatrix.zero(St, m, 0)

    state = _LiftState(St, m, l, d)
    state.F = [F0s, F1]
    state.R = [R0s, R1]
    state.V = t2.vectors.promote(St)
    state.C = {0: state.V}
    state.order = 1
    if l:
        gb0, ideal_exprs, ng = _reduction_setup(F0m, R0)
        pad = (0,) * (St.nvars - base.nvars)
        state.xbasis = _XBasis(gb0, St)
        state.ideal_exprs = [
            {j: {mo + pad: c for mo, c in poly.terms_dict.items()}
             for j, poly in expr.items()}
            for expr in ideal_exprs
        ]
        state.n_ideal = ng
        if d:
            state.vhat_lookup, state.vhat_rows, state.vhat_T = \
                _echelon_obstructions(t2, gb0, St)

    defect = _identity_defect(state)
    if defect is not None and not defect.t_truncate(1).is_zero():
        raise LiftError("first-order family fails its own relations")
    emit(MSG_LIFTING)
    polynomial = defect is None or defect.is_zero()
    if polynomial:
        emit(MSG_POLYNOMIAL)
    else:
        for target in range(2, max_order + 1):
            emit(MSG_ORDER % target)
            if state.gbt is None:
                _lowest_g_basis(state)
            if _lift_step(state):
                polynomial = True
                emit(MSG_POLYNOMIAL)
                break

    return DeformationResult(
        St, params, t1, t2, state.F, state.R, state.G, state.C,
        polynomial, state.order, log)
