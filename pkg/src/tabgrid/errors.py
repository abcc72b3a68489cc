"""Exception types shared across the package."""


class TabgridError(Exception):
    """Base class for all errors raised by this package."""


class LayoutError(TabgridError):
    """Input layout JSON violates the documented schema."""


class ConfigError(TabgridError):
    """A configuration file is malformed or inconsistent."""


class InvalidPattern(ConfigError):
    """A regular expression in a rules config does not compile."""


class DegenerateGrid(TabgridError):
    """A separator cluster yields fewer than two borders in one direction."""


class EmptyBody(TabgridError):
    """A projection profile contains no text at all."""


class InsufficientContext(TabgridError):
    """The page has no adjacent word pairs to estimate spacing from."""


class EmptyCorpus(TabgridError):
    """An evaluation was requested over zero documents."""


class DuplicateKey(TabgridError):
    """Two evaluation files claim the same (file id, page, table) key."""
