"""Ground applicability conditions against a theory.

For a fixed theory, literal and set of frozen closures, a condition with
quantifiers over theory-derived finite domains unfolds into an And/Or
circuit whose only free leaves are memberships in the proof under
construction.  Pure atoms and closure tests are folded to constants.  The
circuit is monotone whenever the condition is P-disciplined, which is what
lets the kernel saturate it as a least fixpoint.
"""

from __future__ import annotations

from array import array

from .conditions import (
    And, Antecedent, ComplementOf, CurrentProof, Exists, FalseC, ForAll, In, IsFact, NotIn,
    NotPure, Or, Pure, Query, RulesAll, RulesSD, RulesStrict, TrueC,
)
from .errors import DLError
from .kernel import AND, ATOM, OR, TRUE
from .tags import Conclusion
from .theory import HeadSubset

SUBSET = {RulesAll: HeadSubset.ALL, RulesStrict: HeadSubset.STRICT,
          RulesSD: HeadSubset.STRICT_OR_DEFEASIBLE}


class GroundProgram:
    """Flat circuit arrays in the layout the kernel expects."""

    def __init__(self):
        self.op = array("i")
        self.a = array("i")
        self.b = array("i")
        self.kids = array("i")
        self.goal_cid = array("i")
        self.goal_root = array("i")
        self._true = None

    def atom(self, cid):
        self.op.append(ATOM)
        self.a.append(cid)
        self.b.append(0)
        return len(self.op) - 1

    def true_node(self):
        if self._true is None:
            self.op.append(TRUE)
            self.a.append(0)
            self.b.append(0)
            self._true = len(self.op) - 1
        return self._true

    def junction(self, opcode, children):
        self.op.append(opcode)
        self.a.append(len(self.kids))
        self.b.append(len(children))
        self.kids.extend(children)
        return len(self.op) - 1

    def add_goal(self, cid, root):
        self.goal_cid.append(cid)
        self.goal_root.append(root)

    def __len__(self):
        return len(self.goal_cid)


class Grounder:
    """Unfolds conditions for one theory.

    ``cid(conclusion)`` must map every conclusion the conditions can test
    against the current proof to its id in the membership array.
    """

    def __init__(self, D, env, cid):
        self.D = D
        self.env = env
        self.cid = cid
        self.prog = GroundProgram()

    def add_goal(self, conclusion, condition):
        """Ground ``condition`` for ``conclusion``; returns False when it is
        constantly false (the goal is then omitted)."""
        node = self._cond(condition, conclusion.literal, {})
        if node is False:
            return False
        if node is True:
            node = self.prog.true_node()
        self.prog.add_goal(self.cid(conclusion), node)
        return True

    def _lit(self, e, q, b):
        t = type(e)
        if t is Query:
            return q
        if t is ComplementOf:
            return self._lit(e.expr, q, b).complement()
        return b[e.name]

    def _domain(self, d, q, b):
        if type(d) is Antecedent:
            return sorted(b[d.rule].antecedent)
        return self.D.rules_with_head(self._lit(d.head, q, b), SUBSET[type(d)])

    def _pure(self, atom, q, b):
        if type(atom) is IsFact:
            return self._lit(atom.lit, q, b) in self.D.facts
        return (b[atom.hi].label, b[atom.lo].label) in self.D.superiority

    def _closure(self, name):
        try:
            return self.env[name]
        except KeyError:
            raise DLError(f"closure {name!r} has not been computed") from None

    def _junction(self, opcode, parts):
        # parts: node ids; constants already folded by caller
        if not parts:
            return opcode == AND
        if len(parts) == 1:
            return parts[0]
        return self.prog.junction(opcode, parts)

    def _cond(self, n, q, b):
        t = type(n)
        if t is And or t is Or:
            absorbing = t is Or  # value that decides the junction
            parts = []
            for x in n.items:
                r = self._cond(x, q, b)
                if r is absorbing:
                    return absorbing
                if r is not (not absorbing):
                    parts.append(r)
            return self._junction(OR if t is Or else AND, parts)
        if t is Exists or t is ForAll:
            absorbing = t is Exists
            parts = []
            for v in self._domain(n.domain, q, b):
                r = self._cond(n.body, q, {**b, n.var: v})
                if r is absorbing:
                    return absorbing
                if r is not (not absorbing):
                    parts.append(r)
            return self._junction(OR if t is Exists else AND, parts)
        if t is In or t is NotIn:
            c = Conclusion(n.tag, self._lit(n.lit, q, b))
            if type(n.target) is CurrentProof:
                if t is NotIn:
                    raise DLError("cannot ground a non-membership test on the current proof")
                return self.prog.atom(self.cid(c))
            hit = c in self._closure(n.target.name)
            return hit if t is In else not hit
        if t is Pure:
            return self._pure(n.atom, q, b)
        if t is NotPure:
            return not self._pure(n.atom, q, b)
        if t is TrueC:
            return True
        if t is FalseC:
            return False
        raise TypeError(f"not a condition: {n!r}")
