import json
import logging
import sys
from fractions import Fraction

import numpy as np

from errors import ArtifactError
from report import Artifact, ArtifactWriterInterface
from utility import SCHEMA_VERSION, fixed

log = logging.getLogger(__name__)


def normalise(value):
    """Plain JSON types with floats rounded to the artifact precision."""
    if isinstance(value, dict):
        return {str(key): normalise(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [normalise(item) for item in value]
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return fixed(value) if np.isfinite(value) else None
    return value


class JsonWriter(ArtifactWriterInterface):

    def __init__(self):
        self.indent = None

    def setup(self):
        self.indent = 2

    def render(self, artifact: Artifact) -> str:
        document = {'schema_version': SCHEMA_VERSION, 'kind': artifact.kind}
        document.update(artifact.payload)
        if artifact.table is not None:
            document['rows'] = artifact.table.to_dict(orient='records')
        return json.dumps(normalise(document), indent=self.indent, sort_keys=True) + '\n'

    def write(self, artifact: Artifact, destination: str):
        text = self.render(artifact)
        if destination in (None, '-'):
            sys.stdout.write(text)
            return
        try:
            with open(destination, 'w', newline='\n') as f:
                f.write(text)
        except OSError as e:
            raise ArtifactError(f'cannot write {destination}: {e}', path=destination)
        log.debug(" write -- %s written to %s", artifact.kind, destination)
