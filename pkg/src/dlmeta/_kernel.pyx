# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled saturation kernel; same contract as ``_pykernel.saturate``."""

cdef enum:
    ATOM = 0
    AND = 1
    OR = 2


cdef bint _ev(int n, const int[:] op, const int[:] a, const int[:] b,
              const int[:] kids, unsigned char[:] member) noexcept nogil:
    cdef int o = op[n]
    cdef int k, s, e
    if o == ATOM:
        return member[a[n]] != 0
    if o == AND:
        s = a[n]
        e = s + b[n]
        for k in range(s, e):
            if not _ev(kids[k], op, a, b, kids, member):
                return False
        return True
    if o == OR:
        s = a[n]
        e = s + b[n]
        for k in range(s, e):
            if _ev(kids[k], op, a, b, kids, member):
                return True
        return False
    return True


def saturate(op, a, b, kids, goal_cid, goal_root, member):
    cdef const int[:] vop = op
    cdef const int[:] va = a
    cdef const int[:] vb = b
    cdef const int[:] vkids = kids
    cdef const int[:] vcid = goal_cid
    cdef const int[:] vroot = goal_root
    cdef unsigned char[:] vmem = member
    cdef Py_ssize_t ngoals = vcid.shape[0]
    cdef Py_ssize_t g
    cdef int c
    cdef bint changed = True
    added = []
    while changed:
        changed = False
        for g in range(ngoals):
            c = vcid[g]
            if vmem[c]:
                continue
            if _ev(vroot[g], vop, va, vb, vkids, vmem):
                vmem[c] = 1
                added.append(c)
                changed = True
    return added
