import random

import pytest

from curvegrp.freegroup import BraidWord, Word, strand_names


def random_word(rng: random.Random, names, max_len: int = 40) -> Word:
    n = rng.randint(0, max_len)
    return Word.from_syllables((rng.choice(names), rng.choice((1, -1))) for _ in range(n))


def random_braid(rng: random.Random, strands: int, max_len: int = 12) -> BraidWord:
    if strands < 2:
        return BraidWord(strands)
    n = rng.randint(0, max_len)
    return BraidWord(strands, [(rng.randint(1, strands - 1), rng.choice((1, -1))) for _ in range(n)])


def decreasing_product(n: int) -> Word:
    return Word.parse(" ".join(reversed(strand_names(n))))


@pytest.fixture
def rng():
    return random.Random(20240611)


# acceptance criterion number -> (title, passed)
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
