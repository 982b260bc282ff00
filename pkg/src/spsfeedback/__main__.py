try:
    from _spsfeedback_cli.main import spsfeedback
except ModuleNotFoundError:
    err_message = "Missing CLI dependencies. To use the spsfeedback CLI run: pip install 'spsfeedback[cli]'"
    import sys

    if "--python" in sys.argv:
        print(sys.executable)
    else:
        print(err_message)
    exit(1)

if __name__ == "__main__":
    spsfeedback()
