"""Exception hierarchy shared by all pipeline stages."""


class ReqAnaphoraError(Exception):
    """Base class for every error raised by this package."""


# corpus
class EmptySpecification(ReqAnaphoraError):
    pass


class DuplicateId(ReqAnaphoraError):
    def __init__(self, req_id: str):
        super().__init__(f"duplicate requirement id: {req_id!r}")
        self.req_id = req_id


# nlpcore / fixtures
class AnalysisError(ReqAnaphoraError):
    def __init__(self, message: str, req_id: str | None = None):
        prefix = f"[{req_id}] " if req_id else ""
        super().__init__(prefix + message)
        self.req_id = req_id


class FixtureMissError(AnalysisError):
    def __init__(self, text: str):
        super().__init__(f"no golden annotations for text: {text!r}")
        self.text = text


# features
class EncoderError(ReqAnaphoraError):
    pass


class RegistryError(ReqAnaphoraError):
    pass


# detector
class InputShapeError(ReqAnaphoraError):
    pass


class NoCandidatesError(ReqAnaphoraError):
    pass


class DegenerateTrainingSet(ReqAnaphoraError):
    pass


class ArtifactError(ReqAnaphoraError):
    pass


# resolver
class InternalConsistencyError(ReqAnaphoraError):
    pass


class ResolverBackendError(ReqAnaphoraError):
    pass


# pipeline
class ConfigError(ReqAnaphoraError):
    pass


class PipelineError(ReqAnaphoraError):
    """An upstream failure annotated with where in the document it happened."""

    def __init__(self, message: str, req_id: str | None = None, token_index: int | None = None):
        where = []
        if req_id is not None:
            where.append(f"requirement {req_id}")
        if token_index is not None:
            where.append(f"pronoun token {token_index}")
        loc = f" ({', '.join(where)})" if where else ""
        super().__init__(message + loc)
        self.req_id = req_id
        self.token_index = token_index


# evalkit
class InsufficientAnnotation(ReqAnaphoraError):
    def __init__(self, triple_id: str, n_annotators: int):
        super().__init__(f"triple {triple_id!r} has {n_annotators} annotator(s); at least 2 required")
        self.triple_id = triple_id


class AlignmentError(ReqAnaphoraError):
    def __init__(self, missing_in_predicted, missing_in_gold):
        self.missing_in_predicted = sorted(missing_in_predicted)
        self.missing_in_gold = sorted(missing_in_gold)
        super().__init__(
            f"gold/predicted pronoun sets differ: {len(self.missing_in_predicted)} gold-only "
            f"{self.missing_in_predicted[:5]}, {len(self.missing_in_gold)} predicted-only "
            f"{self.missing_in_gold[:5]}"
        )
