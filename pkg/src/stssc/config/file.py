"""Accessing configs from files"""
import json
import os

from stssc.core.errors import ConfigurationError

__all__ = ["FromFile", "FromJson", "FromKeyValue", "THIS_DIR"]


THIS_DIR = os.path.abspath(os.path.dirname(__file__))


class FromFile:
    """Configs entrypoint"""
    # pylint:disable=too-few-public-methods

    file_extension = ""

    def __init__(self, base_conf_dir: str):
        """
        :param base_conf_dir: Path with all the configurations
        """
        self.base_conf_dir = base_conf_dir

    @staticmethod
    def load_file(filename: str) -> str:
        """Read file contents

        :param filename: file with config to read
        """
        with open(filename) as f_conf:
            return f_conf.read(-1)

    def read(self, item: str) -> str:
        """Contents of the config file a dotted name points to

        `read("conf.simulation")` loads `conf/simulation` plus the class's
        file extension under the base directory.
        """
        file_path = os.path.join(self.base_conf_dir, *item.split("."))
        try:
            return self.load_file(file_path + self.file_extension)
        except FileNotFoundError:
            raise AttributeError("%s cannot be found" % item)


class FromJson(FromFile):
    """Configs entrypoint for JSON documents

    `conf["conf.simulation.defaults"]` reads key `defaults` of
    `conf/simulation.json`."""
    # pylint:disable=too-few-public-methods

    file_extension = ".json"

    def __getitem__(self, item):
        document, _, key = item.rpartition(".")
        json_conf = json.loads(self.read(document))
        try:
            return json_conf[key]
        except KeyError:
            raise AttributeError("%s cannot be found" % item)


class FromKeyValue(FromFile):
    """Configs from `key=value` text files

    Blank lines and lines starting with `#` are skipped. Keys may use
    dashes or underscores; both map to the underscore form."""
    # pylint:disable=too-few-public-methods

    @staticmethod
    def parse(content: str, source: str = "<text>") -> dict:
        """Parse key=value text

        :param content: file contents
        :param source: name used in error messages
        :return: dict of str keys to str values
        """
        settings = {}
        for number, line in enumerate(content.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigurationError(
                    "%s:%d: expected key=value, got %r" % (source, number, line))
            key, value = line.split("=", 1)
            key = key.strip().replace("-", "_")
            if not key:
                raise ConfigurationError("%s:%d: empty key" % (source, number))
            settings[key] = value.strip()
        return settings

    @classmethod
    def from_path(cls, filename: str) -> dict:
        """Read a key=value file given its full path

        :param filename: path to the config file
        """
        try:
            content = cls.load_file(filename)
        except OSError as exc:
            raise ConfigurationError(
                "cannot read config file %s: %s" % (filename, exc))
        return cls.parse(content, filename)
