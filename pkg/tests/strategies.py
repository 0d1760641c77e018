from fractions import Fraction

from hypothesis import strategies as st

from bstiles.group import GroupWord

letters = st.sampled_from([("a", 1), ("a", -1), ("b", 1), ("b", -1)])


def words(max_len=8):
    return st.lists(letters, max_size=max_len).map(lambda ls: GroupWord(tuple(ls)))


def rationals(lo=-5, hi=5, max_den=60):
    return st.builds(lambda num, den: Fraction(num, den),
                     st.integers(lo * max_den, hi * max_den), st.integers(1, max_den)) \
        .filter(lambda x: lo <= x <= hi)
