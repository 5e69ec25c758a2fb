using Fx.Biz;

namespace Fx.Data
{
    public class Store
    {
        public int Count { get; set; }

        public void Save(int id)
        {
        }

        public void Save(string key)
        {
        }

        public void Notify(Manager manager)
        {
            manager.Work();
        }
    }
}
