def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for row in sorted(test_acceptance.RESULTS):
        terminalreporter.write_line(test_acceptance.format_result(*row))
