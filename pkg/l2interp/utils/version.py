def get_version():
    return '0.3.0'
