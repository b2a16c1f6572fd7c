import os
import random

from deltalf.frontend.session import Session
from deltalf.subtyping.models import Arrow, Atom, Inter, SimpleType, Union

current_path: str = os.path.dirname(os.path.realpath(__file__))
corpus_path: str = os.path.join(os.path.dirname(current_path), "corpus")


def get_data_path(file_name: str) -> str:
    """Get the path of a test source file

    :param file_name: Name of the file under tests/data
    """
    return os.path.join(current_path, "data", file_name)


def get_corpus_path(file_name: str) -> str:
    """Get the path of a corpus file

    :param file_name: Name of the file under corpus/
    """
    return os.path.join(corpus_path, file_name)


def corpus_files() -> list[str]:
    return sorted(name for name in os.listdir(corpus_path) if name.endswith(".dlf"))


def load_corpus(file_name: str) -> Session:
    """Run a corpus file in a fresh session

    :param file_name: Name of the file under corpus/
    """
    session = Session(file_name)
    session.run_file(get_corpus_path(file_name))
    return session


def session_from(text: str) -> Session:
    session = Session("test")
    session.run_source(text)
    return session


def random_simple_type(rng: random.Random, depth: int, atoms: str = "ab") -> SimpleType:
    """Draw a simple type with at most ``depth`` nested constructors

    :param rng: Source of randomness
    :param depth: Maximum nesting of arrows, meets and joins
    :param atoms: Atom names to draw from
    """
    if depth == 0 or rng.random() < 0.2:
        return Atom(rng.choice(atoms))
    constructor = rng.choice((Arrow, Inter, Union))
    return constructor(
        random_simple_type(rng, depth - 1, atoms), random_simple_type(rng, depth - 1, atoms)
    )
