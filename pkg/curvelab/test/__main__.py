from curvelab import test

test.run()
