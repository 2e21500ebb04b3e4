import json
from dataclasses import dataclass
from typing import Any, Dict, Optional

from sqlalchemy import Boolean, Column, ForeignKey, Integer, String, Text, UniqueConstraint
from sqlalchemy.orm import declarative_base, relationship

Base = declarative_base()


class FunctionRecord(Base):
    """An analysed function, keyed by the SHA-256 of its canonical table"""
    __tablename__ = "functions"

    digest = Column(String(64), primary_key=True)
    n = Column(Integer, nullable=False)
    m = Column(Integer, nullable=False)
    table_hex = Column(Text, nullable=False)
    source = Column(String(255), nullable=True)  # file path or corpus name

    analyses = relationship("AnalysisRecord", back_populates="function", cascade="all, delete-orphan")

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctionRecord):
            return False
        return str(self.digest) == str(other.digest)

    def __hash__(self):
        return hash(str(self.digest))

    def to_dict(self):
        return {
            "digest": self.digest,
            "n": self.n,
            "m": self.m,
            "table_hex": self.table_hex,
            "source": self.source,
        }


class AnalysisRecord(Base):
    """One analysis report for a function under one settings combination"""
    __tablename__ = "analyses"

    id = Column(Integer, primary_key=True, autoincrement=True)
    function_digest = Column(String(64), ForeignKey("functions.digest"), nullable=False)
    settings_json = Column(Text, nullable=False)
    report_json = Column(Text, nullable=False)
    passed = Column(Boolean, nullable=False)

    function = relationship("FunctionRecord", back_populates="analyses")

    __table_args__ = (
        UniqueConstraint('function_digest', 'settings_json', name='unique_analysis'),
    )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "function_digest": self.function_digest,
            "settings": json.loads(self.settings_json),
            "report": json.loads(self.report_json),
            "passed": self.passed,
        }


class CorpusEntry(Base):
    """A corpus member with its oracle values"""
    __tablename__ = "corpus_entries"

    id = Column(Integer, primary_key=True, autoincrement=True)
    corpus = Column(String(100), nullable=False)
    function_digest = Column(String(64), ForeignKey("functions.digest"), nullable=False)
    oracle_json = Column(Text, nullable=False)

    __table_args__ = (
        UniqueConstraint('corpus', 'function_digest', name='unique_corpus_entry'),
    )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "corpus": self.corpus,
            "function_digest": self.function_digest,
            "oracle": json.loads(self.oracle_json),
        }


@dataclass
class ScopeType:
    """A level of the settings hierarchy; lower priority number wins"""
    name: str
    priority: int


@dataclass
class ConfigItem:
    """A named setting; value_type is 'number', 'string', 'choice' or 'boolean'"""
    key: str
    description: str
    value_type: str
    choices: Optional[tuple] = None


@dataclass
class ConfigValue:
    """A setting's value at one scope"""
    config_item_key: str
    scope_type: str
    value: Any


@dataclass(frozen=True)
class AnalysisSettings:
    """Resolved settings handed to the analysis pipeline"""
    budget: int = 1 << 24
    ht_coprime: str = "order"
    bound_convention: str = "strict"
    output_format: str = "json"
    seed: int = 0
    timings: bool = False
    database_url: Optional[str] = None

    def report_dict(self) -> Dict[str, Any]:
        """Settings that influence report contents, in a stable order"""
        return {
            "budget": self.budget,
            "ht_coprime": self.ht_coprime,
            "bound_convention": self.bound_convention,
            "seed": self.seed,
        }
