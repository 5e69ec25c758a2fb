using Fx.Biz;

namespace Fx.Ui
{
    public class Page
    {
        private Manager manager;

        public void Click()
        {
            manager.Work();
            manager.Persist(7);
        }
    }
}
