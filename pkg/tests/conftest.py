import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from opinionstrength.corpus import Corpus, LabeledDoc
from opinionstrength.lexicon import Lexicon


@pytest.fixture
def worked_lexicon():
    """Lexicon for the worked grouped-vector example."""
    return Lexicon(
        {"güzel": 3, "iyi": 3, "kaliteli": 4, "pahalı": -2, "işkence": -4},
        negation_words={"değil"},
        booster_words={"çok", "fazla"},
    )


@pytest.fixture
def four_docs():
    return Corpus((
        LabeledDoc("a", "iyi hat", 4, -1),
        LabeledDoc("b", "iyi paket", 4, -2),
        LabeledDoc("c", "iyi ama yavaş", 2, -3),
        LabeledDoc("d", "yavaş hat", 1, -3),
    ))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(LINES):
            terminalreporter.write_line(LINES[k])
