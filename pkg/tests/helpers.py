from dlmeta import Conclusion, parse_conclusion


def cs(*texts):
    return {parse_conclusion(t) for t in texts}


def lits(conclusions, tag):
    return {str(c.literal) for c in conclusions if str(c.tag) == tag}


# acceptance results, printed in the terminal summary by conftest
ACCEPTANCE = []
