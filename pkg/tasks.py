from invoke import task

@task
def start(ctx):
    ctx.run("python src/index.py --help")

@task
def test(ctx):
    ctx.run("poetry run pytest src")

@task
def checks(ctx):
    ctx.run("python src/check_index.py")

@task
def figures(ctx):
    ctx.run("mkdir -p figures")
    for figure_id in range(1, 8):
        ctx.run(f"python src/index.py figure {figure_id} --out figures/figure_{figure_id}.csv")

@task
def coverage_report(ctx):
    ctx.run("poetry run coverage run --branch -m pytest")
    ctx.run("poetry run coverage report -m")
    ctx.run("poetry run coverage html")

@task
def lint(ctx):
    ctx.run("pylint src")

@task
def format(ctx):
    ctx.run("autopep8 --in-place --recursive src")
