#!/usr/bin/env python3
"""
Prepare a local result store for `main.py --db ...`.

SQLite needs nothing beyond a path (sqlite:///results.db). For PostgreSQL
create the database first with createdb. The URL comes from --db-url, then
the resolved settings (ALGIMM_DATABASE_URL, settings file), then DATABASE_URL.
"""

import os
import sys
import logging
import argparse
from typing import Dict, Optional

from sqlalchemy import create_engine, func, inspect, select
from sqlalchemy.exc import SQLAlchemyError

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from app import configure_logging, load_settings
from models import Base


def _display_url(db_url: str) -> str:
    return db_url.split('@')[1] if '@' in db_url else db_url


def table_counts(engine) -> Dict[str, int]:
    """Row count of every result table present in the database"""
    present = set(inspect(engine).get_table_names())
    counts = {}
    with engine.connect() as connection:
        for name, table in sorted(Base.metadata.tables.items()):
            if name in present:
                counts[name] = connection.execute(select(func.count()).select_from(table)).scalar_one()
    return counts


def setup_database(db_url: str, drop_existing: bool = False, check_only: bool = False) -> Optional[Dict[str, int]]:
    """Create (or with check_only just inspect) the result tables; None on a database error"""
    logging.info(f"Result store: {_display_url(db_url)}")
    try:
        engine = create_engine(db_url)
        if not check_only:
            if drop_existing:
                logging.warning("Dropping result tables...")
                Base.metadata.drop_all(engine)
            Base.metadata.create_all(engine)

        counts = table_counts(engine)
        missing = sorted(set(Base.metadata.tables) - set(counts))
        for name, rows in counts.items():
            logging.info(f"  {name}: {rows} rows")
        if missing:
            logging.warning(f"Missing tables: {', '.join(missing)}")
        return counts

    except SQLAlchemyError as e:
        logging.error(f"Database error: {e}")
        return None


def main():
    parser = argparse.ArgumentParser(description="Create or inspect the result store tables")
    parser.add_argument("--db-url", help="Database URL (defaults to the resolved database_url setting)")
    parser.add_argument("--settings", help="JSON settings file")
    parser.add_argument("--drop", action="store_true", help="Drop existing tables before creating new ones")
    parser.add_argument("--check", action="store_true", help="Only report tables and row counts")
    args = parser.parse_args()

    configure_logging()
    db_url = args.db_url or load_settings(args.settings).database_url
    if not db_url:
        logging.error("No database URL: pass --db-url or set DATABASE_URL")
        sys.exit(2)

    if setup_database(db_url, args.drop, args.check) is None:
        sys.exit(1)


if __name__ == "__main__":
    main()
