"""Common utils"""
from contextlib import contextmanager
import multiprocessing
import os
import pickle
import tempfile

import cloudpickle
from pysparkling import Context

from stssc.core.errors import OutputError


@contextmanager
def get_context(workers: int = 1):
    """Get a pysparkling context backed by a process pool

    The pool is always closed on exit.

    :param workers: number of worker processes, 1 runs in-process
    """
    if workers <= 1:
        yield Context()
        return
    pool_ = multiprocessing.Pool(workers)
    try:
        yield Context(
            pool=pool_,
            serializer=cloudpickle.dumps,
            deserializer=pickle.loads)
    finally:
        pool_.close()
        pool_.join()


def _default_mode() -> int:
    """Mode a plain open() would give a new file under the current umask"""
    mask = os.umask(0)
    os.umask(mask)
    return 0o666 & ~mask


@contextmanager
def atomic_write(path: str):
    """Write a file in one step

    Content goes to a temporary file in the target directory and replaces
    `path` only when the block exits cleanly.

    :param path: destination file
    """
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory):
        raise OutputError("directory %s does not exist" % directory)
    try:
        f_obj = tempfile.NamedTemporaryFile(
            mode="w", dir=directory, delete=False, newline="")
    except OSError as exc:
        raise OutputError("cannot write to %s: %s" % (directory, exc))
    try:
        with f_obj:
            yield f_obj
        # temporary files are created 0600
        os.chmod(f_obj.name, _default_mode())
        os.replace(f_obj.name, path)
    except BaseException:
        if os.path.exists(f_obj.name):
            os.remove(f_obj.name)
        raise
