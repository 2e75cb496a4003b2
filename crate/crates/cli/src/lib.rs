//! Library side of the command-line tool: the verification suites shared by
//! the `verify` subcommand and the acceptance tests.

pub mod checks;
