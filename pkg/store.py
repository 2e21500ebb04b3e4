import json
import logging
from typing import Any, Dict, List, Optional

from sqlalchemy.exc import SQLAlchemyError

from funcrep import VectorialFunction
from models import AnalysisRecord, CorpusEntry, FunctionRecord


class ResultStore:
    """Persists functions, analysis reports and corpus manifests through a SQLAlchemy session"""

    def __init__(self, session):
        self.db_session = session

    def _commit(self, what: str) -> None:
        try:
            self.db_session.commit()
            logging.debug(f"Committed {what}")
        except SQLAlchemyError as e:
            self.db_session.rollback()
            logging.error(f"Error saving {what}: {e}")
            raise

    def add_function(self, F: VectorialFunction, source: Optional[str] = None) -> FunctionRecord:
        """Insert the function unless a record with its digest exists"""
        digest = F.digest()
        record = self.db_session.query(FunctionRecord).filter_by(digest=digest).first()
        if record is not None:
            return record
        record = FunctionRecord(digest=digest, n=F.n, m=F.m, table_hex=F.table_hex(), source=source)
        self.db_session.add(record)
        self._commit(f"function {digest[:12]}")
        return record

    def record_analysis(self, F: VectorialFunction, settings: Dict[str, Any], report: Dict[str, Any],
                        source: Optional[str] = None) -> AnalysisRecord:
        """Store a report, replacing an earlier one for the same function and settings"""
        self.add_function(F, source)
        settings_json = json.dumps(settings, sort_keys=True)
        record = self.db_session.query(AnalysisRecord).filter_by(
            function_digest=F.digest(), settings_json=settings_json).first()
        if record is None:
            record = AnalysisRecord(function_digest=F.digest(), settings_json=settings_json)
            self.db_session.add(record)
        record.report_json = json.dumps(report)
        record.passed = bool(report.get("passed", True))
        self._commit(f"analysis of {F.digest()[:12]}")
        return record

    def get_analyses(self, digest: str) -> List[Dict[str, Any]]:
        records = self.db_session.query(AnalysisRecord).filter_by(function_digest=digest).all()
        return [record.to_dict() for record in records]

    def add_corpus_entry(self, corpus: str, F: VectorialFunction, oracle: Dict[str, Any]) -> CorpusEntry:
        self.add_function(F, corpus)
        entry = self.db_session.query(CorpusEntry).filter_by(corpus=corpus, function_digest=F.digest()).first()
        if entry is None:
            entry = CorpusEntry(corpus=corpus, function_digest=F.digest())
            self.db_session.add(entry)
        entry.oracle_json = json.dumps(oracle, sort_keys=True)
        self._commit(f"corpus entry {corpus}/{F.digest()[:12]}")
        return entry

    def get_corpus(self, corpus: str) -> List[Dict[str, Any]]:
        entries = self.db_session.query(CorpusEntry).filter_by(corpus=corpus).all()
        return [entry.to_dict() for entry in entries]
