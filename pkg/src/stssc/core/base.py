"""
Base classes
Provides the scheme registry and the shared singleton metaclass.
"""
# pylint:disable=too-few-public-methods
from abc import abstractmethod


class Singleton(type):
    """Ensure we have one instance of a class"""
    _instance = None

    def __call__(cls, *args, **kwargs):
        """Ensure we have only one instance"""
        if cls._instance is None:
            cls._instance = super().__call__(*args, **kwargs)
        return cls._instance


class SchemeHolder(type):
    """Keeps every concrete transmission scheme reachable by its name"""

    REGISTRY = {}

    def __new__(cls, name, bases, attrs):
        """`name` attribute, or the class name, is the registry key"""
        scheme_cls = type.__new__(cls, name, bases, attrs)
        is_abstract = attrs.get("abstract", False)
        if not is_abstract:
            key = attrs.get("name", scheme_cls.__name__)
            cls.REGISTRY[key] = scheme_cls
        return scheme_cls

    @classmethod
    def get_registry(cls):
        """Get our registry"""
        return cls.REGISTRY


class BaseRegistry(metaclass=SchemeHolder):
    """Inherit this to register your scheme"""
    abstract = True

    @abstractmethod
    def _execute(self, *args, **kwargs):
        """Scheme logic"""
        raise NotImplementedError

    def execute(self, *args, **kwargs):
        """Execute entrypoint"""
        return self._execute(*args, **kwargs)

    def get_metrics(self):
        """Collect metrics in `self`.`metrics`"""
        return dict(getattr(self, "metrics", {}))
