import logging
from pathlib import Path

from pydantic import ValidationError

from core.exceptions import (
    EvaluationError,
    IoError,
    KindError,
    ModelValidationError,
    SchemaError,
    StructureError,
)
from dsl import parse, to_tree
from models.bowtie import Bowtie
from models.consequence import ConsequenceTree
from models.prevention import PreventionTree
from schemas.document import Model, ModelDocument
from services.service_base import ServiceBase

logger = logging.getLogger(__name__)


class ModelService(ServiceBase):
    """
        Persistence of models as JSON documents, plus DSL sources as input.
    """

    def save(self, model: Model, path: str | Path) -> None:
        text = self.dumps(model)
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as e:
            raise IoError(f"Cannot write '{path}': {e.strerror or e}") from e
        logger.debug("Saved %s model to %s", type(model).__name__, path)

    def load(self, path: str | Path) -> Model:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise IoError(f"Cannot read '{path}': {e.strerror or e}") from e
        except UnicodeDecodeError as e:
            raise IoError(f"'{path}' is not UTF-8 text") from e
        return self.loads(text)

    def dumps(self, model: Model) -> str:
        return ModelDocument.from_model(model).to_json()

    def loads(self, text: str) -> Model:
        try:
            document = ModelDocument.model_validate_json(text)
        except ValidationError as e:
            raise schema_error(e) from e
        return self.from_document(document)

    def from_document(self, document: ModelDocument) -> Model:
        """Validate a parsed document into a model, naming the violated invariant."""
        try:
            return document.to_model()
        except (StructureError, KindError, EvaluationError) as e:
            raise ModelValidationError(e) from e
        except ValidationError as e:
            raise schema_error(e) from e

    def parse_model(self, source: str, kind: str = "dpt") -> PreventionTree | ConsequenceTree:
        """Parse DSL text into a prevention (`dpt`) or consequence (`dct`) tree."""
        tree = to_tree(parse(source))
        if kind == "dct":
            return ConsequenceTree(tree=tree)
        return PreventionTree(tree=tree)

    def read_source(self, path: str | Path) -> str:
        try:
            return Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise IoError(f"Cannot read '{path}': {e.strerror or e}") from e


def schema_error(error: ValidationError) -> SchemaError:
    """First pydantic error as a SchemaError with a dotted field path."""
    first = error.errors()[0]
    field_path = ".".join(str(part) for part in first["loc"])
    return SchemaError(field_path, first["msg"])


# --- Model views used by the CLI and HTTP surfaces ---
def prevention_of(model: Model) -> PreventionTree:
    """The prevention side of a dpt or bowtie model."""
    if isinstance(model, Bowtie):
        return model.prevention
    if isinstance(model, PreventionTree):
        return model
    raise SchemaError("kind", "expected a dpt or bowtie model, got dct")


def consequence_of(model: Model) -> ConsequenceTree:
    """The consequence side of a dct or bowtie model."""
    if isinstance(model, Bowtie):
        return model.consequence
    if isinstance(model, ConsequenceTree):
        return model
    raise SchemaError("kind", "expected a dct or bowtie model, got dpt")


def bowtie_of(model: Model) -> Bowtie:
    if isinstance(model, Bowtie):
        return model
    raise SchemaError("kind", "expected a bowtie model")
