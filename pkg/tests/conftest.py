from __future__ import annotations

from pathlib import Path

import pytest

from ontobib.corpus.bibtex import parse_bibtex
from ontobib.ontology.ccs import load_ccs, load_descriptors
from ontobib.ontology.ops import attach_descriptors
from ontobib.service.config import PortalConfig
from ontobib.service.state import Portal

FIXTURES = Path(__file__).parent / "fixtures"

# Twelve lines: letter A with a General child, plus a small D/H/I skeleton.
MINI_CCS = """\
A General Literature
A.0 GENERAL
A.1 Introductory and Survey
D Software
D.3 Programming Languages
D.3.2 Language Classifications
H Information Systems
H.2 Database Management
H.3 Information Storage and Retrieval
I Computing Methodologies
I.3 Computer Graphics
I.3.3 Picture/Image Generation
"""

MINI_DESCRIPTORS = """\
C++ | D.3.2
Java | D.3.2
OpenGL | I.3, I.3.3
"""


@pytest.fixture
def mini_ontology():
    return load_ccs(MINI_CCS)


@pytest.fixture
def mini_enriched(mini_ontology):
    return attach_descriptors(mini_ontology, load_descriptors(MINI_DESCRIPTORS))


@pytest.fixture(scope="session")
def ccs98_text():
    return (FIXTURES / "ccs98.txt").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def descriptors98_text():
    return (FIXTURES / "descriptors98.txt").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def ontology30():
    ontology = load_ccs((FIXTURES / "ontology30.txt").read_text(encoding="utf-8"))
    descriptors = load_descriptors("C++ | D.3.2\nSQL | H.2.4\n")
    return attach_descriptors(ontology, descriptors)


@pytest.fixture(scope="session")
def corpus50_records():
    records, warnings = parse_bibtex((FIXTURES / "corpus50.bib").read_text(encoding="utf-8"))
    assert not warnings
    assert len(records) == 50
    return records


def make_portal(tmp_path: Path, **overrides) -> Portal:
    config = PortalConfig.load(None)
    config.data_dir = tmp_path / "data"
    config.committee = ["m1", "m2", "m3"]
    for key, value in overrides.items():
        setattr(config, key, value)
    return Portal(config)


@pytest.fixture
def portal_factory(tmp_path):
    def factory(**overrides) -> Portal:
        return make_portal(tmp_path, **overrides)
    return factory
