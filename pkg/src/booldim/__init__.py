"""Boolean dimension of finite posets."""
