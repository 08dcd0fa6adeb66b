import logging
import sys

from errors import ArtifactError
from report import Artifact, ArtifactWriterInterface
from utility import SIGNIFICANT_DIGITS

log = logging.getLogger(__name__)


class CsvWriter(ArtifactWriterInterface):

    def __init__(self):
        self.float_format = None
        self.line_terminator = None

    def setup(self):
        self.float_format = f'%.{SIGNIFICANT_DIGITS}g'
        self.line_terminator = '\n'

    def write(self, artifact: Artifact, destination: str):
        if artifact.table is None:
            raise ArtifactError(f'{artifact.kind} has no table to write as CSV', kind=artifact.kind)

        target = sys.stdout if destination in (None, '-') else destination
        try:
            artifact.table.to_csv(target, index=False, float_format=self.float_format,
                                  lineterminator=self.line_terminator)
        except OSError as e:
            raise ArtifactError(f'cannot write {destination}: {e}', path=destination)
        log.debug(" write -- %s rows of %s to %s", len(artifact.table), artifact.kind, destination)
