"""Pure-Python saturation kernel (fallback for the compiled ``_kernel``).

A ground program is a forest of monotone Boolean circuits stored in flat
integer arrays.  Node ``i`` has opcode ``op[i]``:

* ``ATOM``: true iff ``member[a[i]]`` is set;
* ``AND`` / ``OR``: over the ``b[i]`` child nodes ``kids[a[i]:a[i]+b[i]]``;
* ``TRUE``: constant.

Each goal ``g`` pairs a conclusion id ``goal_cid[g]`` with the root of its
circuit ``goal_root[g]``.
"""

ATOM, AND, OR, TRUE = 0, 1, 2, 3


def saturate(op, a, b, kids, goal_cid, goal_root, member):
    """Scan the goals in order, setting ``member[cid]`` for every goal whose
    circuit holds, until a full scan adds nothing.  Returns added ids in
    the order they were derived."""

    def ev(n):
        o = op[n]
        if o == ATOM:
            return member[a[n]]
        if o == AND:
            s = a[n]
            for k in range(s, s + b[n]):
                if not ev(kids[k]):
                    return False
            return True
        if o == OR:
            s = a[n]
            for k in range(s, s + b[n]):
                if ev(kids[k]):
                    return True
            return False
        return True

    added = []
    pending = list(range(len(goal_cid)))
    changed = True
    while changed:
        changed = False
        rest = []
        for g in pending:
            c = goal_cid[g]
            if member[c]:
                continue
            if ev(goal_root[g]):
                member[c] = 1
                added.append(c)
                changed = True
            else:
                rest.append(g)
        pending = rest
    return added
