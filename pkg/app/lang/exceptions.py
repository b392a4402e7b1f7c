class DbfiError(Exception):
    """Root of every error raised by the toolkit."""


class ParseError(DbfiError):
    pass


class UnbalancedBrackets(ParseError):
    """A '[' without its ']' or a ']' without its '['.

    `offset` is the byte offset of the first offending bracket in the source.
    """

    def __init__(self, offset, bracket):
        self.offset = offset
        self.bracket = bracket
        super().__init__(f"unbalanced '{bracket}' at offset {offset}")
