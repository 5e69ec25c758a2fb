using System;
using Fx.Data;
using Fx.Svc;
using Vendor.Logging;

namespace Fx.Biz
{
    public class Manager
    {
        private Store store;
        private Worker worker;
        private IJob job;
        private Gateway gateway;
        private int retries;

        public void Persist(int id)
        {
            store.Save(id);
        }

        public void Work()
        {
            worker.Run();
            worker.Log();
        }

        public void Dispatch()
        {
            job.Execute();
        }

        public int Compute(int x)
        {
            return MathUtil.Twice(x);
        }

        public string Call()
        {
            return gateway.Send("ping");
        }

        public void Trace()
        {
            Journal.Write("trace");
        }

        public void Guess()
        {
            var tmp = Make();
            tmp.Go();
        }

        public int Tally()
        {
            Func<int, int> inc = x => x + 1;
            return store.Count;
        }
    }
}
