"""
Database models for the persistent memo store of component dimensions
"""
from datetime import datetime
from pathlib import Path
from typing import Optional

from sqlalchemy import Boolean, Column, DateTime, Integer, String, UniqueConstraint, create_engine
from sqlalchemy.exc import IntegrityError
from sqlalchemy.orm import declarative_base, sessionmaker

from config.system_config import SystemConfig
from utils.logger import get_logger

Base = declarative_base()
log = get_logger("database")


class ComponentDimension(Base):
    """Dimension of one multihomogeneous component"""
    __tablename__ = 'component_dimensions'
    __table_args__ = (
        UniqueConstraint('model_label', 'k', 'multidegree', 'fix_first', name='uq_component'),
    )

    id = Column(Integer, primary_key=True)
    model_label = Column(String(32), nullable=False)
    k = Column(Integer, nullable=False)
    multidegree = Column(String(512), nullable=False)
    fix_first = Column(Boolean, nullable=False, default=False)
    dimension = Column(Integer, nullable=False)
    created_at = Column(DateTime, default=datetime.now)

    def __repr__(self):
        return f"<ComponentDimension(model='{self.model_label}', k={self.k}, md='{self.multidegree}', dim={self.dimension})>"


class DatabaseManager:
    """Access to the memo database"""

    def __init__(self, database_url: str = "sqlite:///:memory:"):
        self.database_url = database_url
        self.engine = create_engine(database_url, echo=False)
        self.SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=self.engine)
        self.create_tables()

    @classmethod
    def for_directory(cls, directory) -> "DatabaseManager":
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        return cls(f"sqlite:///{directory / SystemConfig.CACHE_DB_NAME}")

    def create_tables(self):
        Base.metadata.create_all(bind=self.engine)
        log.debug(f"Memo tables ready at {self.database_url}")

    def get_session(self):
        return self.SessionLocal()

    def get_dimension(self, model_label: str, k: int, multidegree: str, fix_first: bool) -> Optional[int]:
        session = self.get_session()
        try:
            row = (session.query(ComponentDimension)
                   .filter_by(model_label=model_label, k=k, multidegree=multidegree, fix_first=fix_first)
                   .first())
            return row.dimension if row is not None else None
        finally:
            session.close()

    def save_dimension(self, model_label: str, k: int, multidegree: str, fix_first: bool, dimension: int) -> bool:
        """Insert a value; an existing row for the same key is kept."""
        session = self.get_session()
        try:
            session.add(ComponentDimension(model_label=model_label, k=k, multidegree=multidegree,
                                           fix_first=fix_first, dimension=dimension))
            session.commit()
            return True
        except IntegrityError:
            session.rollback()
            log.debug(f"Memo row for {model_label} k={k} {multidegree} already stored")
            return False
        except Exception as e:
            session.rollback()
            log.error(f"Failed to store component dimension: {e}")
            return False
        finally:
            session.close()

    def count(self) -> int:
        session = self.get_session()
        try:
            return session.query(ComponentDimension).count()
        finally:
            session.close()
