import abc
from dataclasses import dataclass, field

import pandas as pd


@dataclass(frozen=True, eq=False)
class Artifact:
    """A named result: a table, a report payload, or both."""
    kind: str
    table: pd.DataFrame = None
    payload: dict = field(default_factory=dict)


class ArtifactWriterInterface(metaclass=abc.ABCMeta):
    @classmethod
    def __subclasshook__(cls, subclass):
        return (hasattr(subclass, 'setup') and
                callable(subclass.setup) and
                hasattr(subclass, 'write') and
                callable(subclass.write) or
                NotImplemented)

    @abc.abstractmethod
    def setup(self):
        """Prepare formatting options"""
        raise NotImplementedError

    @abc.abstractmethod
    def write(self, artifact: Artifact, destination: str):
        """Write the artifact to a path, or to stdout when destination is '-'"""
        raise NotImplementedError
