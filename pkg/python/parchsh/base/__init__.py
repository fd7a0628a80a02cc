"""
the system identity, the exception base class, and (in submodules) configuration and logging
shared by all parchsh subpackages
"""
import logging

from .version import __version__

class SystemInfoMixin(object):
    """
    names the system and subsystem a component belongs to, and picks its logger
    """

    # set by the command line via make_global()
    __globalsys = None

    def __init__(self, sysname: str, sysabbrev: str, subsname: str, subsabbrev: str, version: str):
        self._sysn = sysname
        self._abbrev = sysabbrev
        self._subsys = subsname
        self._subabbrev = subsabbrev
        self._ver = version

    @property
    def system_name(self):
        return self._sysn

    @property
    def system_abbrev(self):
        return self._abbrev

    @property
    def subsystem_name(self):
        return self._subsys

    @property
    def subsystem_abbrev(self):
        return self._subabbrev

    @property
    def system_version(self):
        return self._ver

    def getSysLogger(self):
        """
        return the logger named PCST or PCST.<subsystem abbrev>
        """
        out = logging.getLogger(self.system_abbrev)
        if self.subsystem_abbrev:
            out = out.getChild(self.subsystem_abbrev)
        return out

    @classmethod
    def get_global_system(cls):
        """
        return the system registered with make_global(), or None.  ParchshException attributes
        itself to this system.
        """
        return cls.__globalsys

    def make_global(self):
        """
        register this instance as the global system, replacing any earlier one
        """
        SystemInfoMixin.__globalsys = self

def get_global_system() -> SystemInfoMixin:
    """
    shorthand for ``SystemInfoMixin.get_global_system()``
    """
    return SystemInfoMixin.get_global_system()

_PCSTSYSNAME = "Parallel CHSH Self-Test"
_PCSTSYSABBREV = "PCST"

class ParchshSystem(SystemInfoMixin):
    """
    the parallel-CHSH self-testing system; the command line registers an instance naming
    itself as the subsystem.
    """
    def __init__(self, subsname: str="", subsabbrev: str=""):
        super(ParchshSystem, self).__init__(_PCSTSYSNAME, _PCSTSYSABBREV, subsname, subsabbrev,
                                            __version__)

system = ParchshSystem()


class ParchshException(Exception):
    """
    a common base class for all parchsh-related exceptions
    """

    def __init__(self, message=None, cause=None, sys=None):
        """
        :param str     message:  what went wrong; defaults to str(cause)
        :param Exception cause:  the exception that led to this one, if any
        :param SystemInfoMixin sys:  the subsystem raising the error (default: the global system)
        """
        if not message:
            if cause:
                message = str(cause)
            else:
                message = "Unknown parchsh exception occurred"
        if not sys:
            sys = SystemInfoMixin.get_global_system() or system
        self.system = sys
        super(ParchshException, self).__init__(message)
        self.__cause__ = cause

    @property
    def cause(self):
        return self.__cause__
