from fractions import Fraction as F

from transdyn.core import Interval, cylinder_union, interval_union


def iu(*pairs, space="interval"):
    """Union of open intervals ``(a, b)``."""
    return interval_union(space, [Interval(F(a), F(b)) for a, b in pairs])


def closed(a, b, space="interval"):
    return interval_union(space, [Interval(F(a), F(b), True, True)])


def cyl(sys, word, off=0):
    return cylinder_union(sys.space, [(off, tuple(word))])
