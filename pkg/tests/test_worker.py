import worker


def test_shard_keeps_order():
    chunks = worker.shard(list(range(10)), workers=2)
    assert [len(c) for c in chunks] == [2, 2, 2, 2, 2]
    assert [x for c in chunks for x in c] == list(range(10))
    assert worker.shard([], workers=3) == []


def test_run_shards_in_process():
    assert worker.run_shards(sum, [[1, 2], [3], []]) == [3, 3, 0]


def test_run_shards_on_a_pool():
    shards = worker.shard(list(range(20)), workers=2)
    assert worker.run_shards(sum, shards, workers=2) == [sum(s) for s in shards]
