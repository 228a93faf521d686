import random

from hypothesis import strategies as st

from tilecert.srs import RelProblem, Rule, parse_tpdb

ACCEPTANCE_LINES: dict[str, str] = {}

Z018 = "(RULES a b -> b c a, b a -> a c b, b c -> c b b)"
RBEANS = "(RULES b a a -> a b c, c a -> a c, c b -> b a, ->= b)"
R4 = "(RULES a b a b a -> , a b ->= b b a a)"
Z001 = "(RULES a a b b -> b b b a a a)"
ABBB = "(RULES a b b b -> b b a a b)"
A3_B3 = "(RULES a a a -> a a b b b a a)"
A3_B2 = "(RULES a a a -> a a b b a a)"
W16 = "(RULES a b a b a b a a b a b a -> a b a b a a b a b a a b a b)"
GEBHARDT16 = "(RULES 0 0 0 0 -> 1 0 0 1, 0 1 0 1 -> 0 0 1 0)"


def P(text: str) -> RelProblem:
    return parse_tpdb(text)


def W(text: str) -> tuple:
    return tuple(text)


def random_problem(rng: random.Random, relative: bool = False, letters: str = "abc",
                   max_rules: int = 3, max_side: int = 4) -> RelProblem:
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        lhs = tuple(rng.choice(letters) for _ in range(rng.randint(1, max_side)))
        rhs = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_side)))
        rules.append(Rule(lhs, rhs))
    if not relative:
        return RelProblem(tuple(rules))
    strict = [r for i, r in enumerate(rules) if i == 0 or rng.random() < 0.5]
    return RelProblem(tuple(strict), tuple(r for r in rules if r not in strict))


words = st.lists(st.sampled_from("abc"), max_size=4).map(tuple)
nonempty_words = st.lists(st.sampled_from("abc"), min_size=1, max_size=4).map(tuple)
rules_st = st.builds(Rule, nonempty_words, words)
problems = st.lists(rules_st, min_size=1, max_size=3).map(lambda rs: RelProblem(tuple(rs)))
relative_problems = st.tuples(st.lists(rules_st, min_size=1, max_size=2),
                              st.lists(rules_st, max_size=2)).map(
    lambda t: RelProblem(tuple(t[0]), tuple(t[1])))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda s: (int(s.split()[0]), s)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
