import hashlib
import json
import os
import tempfile
from pathlib import Path

import git
import numpy as np
import yaml

from ginlab.errors import InputError
from ginlab.utils.lab_logger import logger


def pathlib_file(file_name):
    if isinstance(file_name, Path):
        return file_name
    if isinstance(file_name, str) and file_name:
        return Path(file_name)
    raise InputError(f'Expected a file path, got {file_name!r}')


def to_builtin(data):
    """Convert numpy scalars/arrays and complex numbers into JSON-friendly values."""
    if isinstance(data, dict):
        return {str(k): to_builtin(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [to_builtin(v) for v in data]
    if isinstance(data, np.ndarray):
        return to_builtin(data.tolist())
    if isinstance(data, (complex, np.complexfloating)):
        return {'re': float(np.real(data)), 'im': float(np.imag(data))}
    if isinstance(data, np.integer):
        return int(data)
    if isinstance(data, np.floating):
        return float(data)
    if isinstance(data, np.bool_):
        return bool(data)
    if isinstance(data, Path):
        return data.as_posix()
    return data


def atomic_write_text(text, file_name):
    """Write text to ``file_name`` through a temp file in the same directory and a rename."""
    file_name = pathlib_file(file_name)
    if not file_name.parent.exists():
        Path.mkdir(file_name.parent, parents=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f'.{file_name.name}.',
                                    dir=file_name.parent.as_posix())
    try:
        with os.fdopen(fd, 'w', newline='') as f:
            f.write(text)
        os.replace(tmp_name, file_name.as_posix())
    except BaseException:
        if os.path.exists(tmp_name):
            os.remove(tmp_name)
        raise


def save_to_json(data, file_name):
    text = json.dumps(to_builtin(data), indent=2, sort_keys=True)
    atomic_write_text(text + '\n', file_name)


def load_from_json(file_name):
    file_name = pathlib_file(file_name)
    with file_name.open('r') as f:
        data = json.load(f)
    return data


def load_from_yaml(file_name):
    """Parse a YAML config or grid file; a missing or malformed file is an input error."""
    file_name = pathlib_file(file_name)
    if not file_name.is_file():
        raise InputError(f'No such file: {file_name}')
    try:
        with file_name.open('r') as f:
            return yaml.safe_load(f)
    except yaml.YAMLError as err:
        raise InputError(f'Cannot parse {file_name}: {err}')


def config_hash(config_dict):
    payload = json.dumps(to_builtin(config_dict), sort_keys=True)
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()[:16]


def get_git_infos(path):
    """Commit and working-tree state of the checkout that produced a run, or None."""
    try:
        repo = git.Repo(path, search_parent_directories=True)
    except (git.exc.InvalidGitRepositoryError, git.exc.NoSuchPathError):
        logger.debug(f'No git checkout at {path}')
        return None
    try:
        branch_name = repo.active_branch.name
    except TypeError:
        branch_name = '[DETACHED]'
    try:
        commit_hash = repo.head.commit.hexsha
    except ValueError:
        # fresh repository without commits
        commit_hash = None
    return dict(
        directory=str(repo.working_tree_dir),
        commit_hash=commit_hash,
        branch_name=branch_name,
        dirty=repo.is_dirty(untracked_files=False),
        code_diff=repo.git.diff(None),
    )
