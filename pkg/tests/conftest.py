from pathlib import Path

import pytest

from mckay.verify import load_corpus

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(CORPUS)


@pytest.fixture(scope="session")
def corpus_by_name(corpus):
    return {e.label: e for e in corpus}
