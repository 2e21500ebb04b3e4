import os
import logging
from dataclasses import replace
from typing import Any, Dict, Mapping, Optional

from dotenv import load_dotenv
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker

from config_manager import ConfigManager, create_config_manager
from models import AnalysisSettings, Base

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def configure_logging(verbose: bool = False) -> None:
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO, format=LOG_FORMAT, force=True)
    # numba, under galois, logs every JIT compilation at DEBUG
    logging.getLogger("numba").setLevel(logging.WARNING)


def load_settings(settings_file: Optional[str] = None, cli_values: Optional[Dict[str, Any]] = None,
                  environ: Optional[Mapping[str, str]] = None) -> AnalysisSettings:
    """.env, then the settings file, environment and command line, resolved through the scopes"""
    load_dotenv()
    environ = os.environ if environ is None else environ
    config_manager: ConfigManager = create_config_manager(environ, settings_file, cli_values)
    settings = config_manager.resolve_settings()
    if settings.database_url is None and environ.get("DATABASE_URL"):
        settings = replace(settings, database_url=environ["DATABASE_URL"])
    logging.debug(f"Resolved settings: {settings}")
    return settings


def create_session(db_url: str):
    """Session bound to db_url with the result tables created"""
    engine = create_engine(db_url)
    Base.metadata.create_all(engine)
    Session = sessionmaker(bind=engine)
    logging.info(f"Connected to result store: {db_url.split('@')[1] if '@' in db_url else db_url}")
    return Session()
