namespace diskgraph {}
