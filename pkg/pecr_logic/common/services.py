import logging
from hashlib import sha1

from django.conf import settings
from django.core.cache import cache
from django.utils.translation import gettext as _


class PecrServiceError(Exception):
    message = _('Error in PECR service')
    status = 1

    def __init__(self, message=None, status=None):
        message = message or self.message
        super().__init__(message)
        self.message = message
        if status is not None:
            self.status = status


class CapacityError(PecrServiceError):
    message = _('List capacity of the machine environment exceeded')


class ProgramStructureError(PecrServiceError):
    message = _('Invalid program structure')


class ApplicationError(PecrServiceError):
    message = _('Invalid application definition')
    status = 2


class PecrParseError(PecrServiceError):
    message = _('Unable to parse input')
    status = 2


class RuleApplicationError(PecrServiceError):
    message = _('Rule cannot be applied')


class ProofRejected(PecrServiceError):
    message = _('Proof rejected')

    def __init__(self, message=None, status=None, line: int = 0):
        super().__init__(message, status)
        self.line = line


class ExecutionError(PecrServiceError):
    message = _('Execution error')


class BudgetExhausted(PecrServiceError):
    message = _('Budget exhausted')
    status = 3


class MatrixShapeError(PecrServiceError):
    message = _('Matrix shapes do not agree')


class DynamicsError(PecrServiceError):
    message = _('Dynamical system error')


class PecrService:
    """
    Base class of the service layer
    """
    logger_name = 'services'

    @property
    def logger(self) -> logging.Logger:
        return logging.getLogger(self.logger_name)

    @staticmethod
    def cache_key(*parts: str) -> str:
        """
        Build a cache key from text parts
        :param parts: strings identifying the cached value
        """
        return sha1('||'.join(parts).encode('utf8')).hexdigest()

    def cached(self, builder, *parts: str):
        """
        Return the cached value for parts, building and storing it on a miss
        :param builder: callable without argument producing the value
        :param parts: strings identifying the value
        """
        key = self.cache_key(self.__class__.__name__, *parts)
        output = cache.get(key)
        if output is not None:
            self.logger.debug('cache hit %s', key)
            return output
        output = builder()
        cache.set(key, output, timeout=settings.PECR_CACHE_TIMEOUT)
        return output
