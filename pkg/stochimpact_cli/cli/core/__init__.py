"""Config loading, validation and output helpers shared by the commands."""
